#include "minforge/service.hpp"

#include "minforge/generators.hpp"
#include "minforge/json.hpp"
#include "minforge/render.hpp"
#include "minforge/sim.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <thread>

namespace minforge {

namespace {

constexpr const char* json_type = "application/json";

/// Carries an HTTP status out of a handler.
struct HttpError {
    int status;
    std::string type;
    std::string message;
    json detail = nullptr;
};

void reply(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(canonical_text(body), json_type);
}

json parse_body(const httplib::Request& req)
{
    if (req.body.empty())
        return json::object();
    try {
        json body = json::parse(req.body);
        if (!body.is_object())
            throw HttpError{400, "ParseError", "request body must be an object"};
        return body;
    } catch (const json::parse_error& e) {
        throw HttpError{400, "ParseError", e.what()};
    }
}

std::string text_member(const json& body, const char* key, const std::string& fallback = {})
{
    const auto it = body.find(key);
    if (it == body.end() || it->is_null())
        return fallback;
    if (!it->is_string())
        throw HttpError{400, "ParseError", std::string("'") + key + "' must be a string"};
    return it->get<std::string>();
}

long long integer_member(const json& body, const char* key, long long fallback)
{
    const auto it = body.find(key);
    if (it == body.end() || it->is_null())
        return fallback;
    if (!it->is_number_integer())
        throw HttpError{400, "ParseError", std::string("'") + key + "' must be an integer"};
    return it->get<long long>();
}

std::vector<ComponentId> id_list(const json& body, const char* key)
{
    std::vector<ComponentId> out;
    const auto it = body.find(key);
    if (it == body.end())
        return out;
    if (!it->is_array())
        throw HttpError{400, "ParseError", std::string("'") + key + "' must be an array"};
    for (const auto& v : *it) {
        if (!v.is_number_unsigned())
            throw HttpError{400, "ParseError", std::string("'") + key + "' must hold component ids"};
        out.push_back(v.get<ComponentId>());
    }
    return out;
}

std::size_t parse_index(const std::string& text, const char* key)
{
    try {
        std::size_t used = 0;
        if (text.empty() || text.front() == '-')
            throw std::invalid_argument(key);
        const unsigned long long value = std::stoull(text, &used);
        if (used != text.size())
            throw std::invalid_argument(key);
        return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
        throw HttpError{400, "ParseError", std::string("'") + key + "' must be a non-negative integer"};
    }
}

std::size_t query_index(const httplib::Request& req, const char* key, std::optional<std::size_t> fallback = {})
{
    if (!req.has_param(key)) {
        if (fallback)
            return *fallback;
        throw HttpError{400, "ParseError", std::string("missing query parameter '") + key + "'"};
    }
    return parse_index(req.get_param_value(key), key);
}

DropParity parity_member(const std::string& text)
{
    if (text.empty())
        return DropParity::drop_first;
    const auto parity = parity_from_name(text);
    if (!parity)
        throw HttpError{400, "ParseError", "parity must be drop_first or deliver_first"};
    return *parity;
}

std::string session_state_name(SimSession::State s)
{
    switch (s) {
    case SimSession::State::running: return "running";
    case SimSession::State::finished: return "finished";
    case SimSession::State::closed: return "closed";
    }
    return "closed";
}

std::string sse(const char* event, const json& data)
{
    return std::string("event: ") + event + "\ndata: " + data.dump() + "\n\n";
}

json summary(const SimulationReport& r)
{
    return json{{"delivered", r.delivered}, {"dropped", r.dropped}, {"partial", r.partial}};
}

} // namespace

struct SessionEntry {
    SessionEntry(std::string id, SimSession session, std::uint64_t revision)
        : id(std::move(id)), session(std::move(session)), revision(revision)
    {
    }

    std::mutex mutex;
    std::string id;
    SimSession session;
    std::uint64_t revision;
    /// Set when the circuit document changed under the session.
    bool invalidated = false;
};

struct Service::State {
    mutable std::shared_mutex doc_mutex;
    CircuitDocument doc;
    std::uint64_t revision = 1;

    std::mutex sessions_mutex;
    std::map<std::string, std::shared_ptr<SessionEntry>> sessions;
    std::uint64_t next_session = 1;

    std::pair<CircuitDocument, std::uint64_t> snapshot() const
    {
        std::shared_lock lock(doc_mutex);
        return {doc, revision};
    }

    std::shared_ptr<SessionEntry> find_session(const std::string& id)
    {
        std::lock_guard lock(sessions_mutex);
        const auto it = sessions.find(id);
        if (it == sessions.end())
            throw HttpError{404, "UnknownSession", "no session '" + id + "'"};
        return it->second;
    }

    static void require_current(const SessionEntry& entry)
    {
        if (entry.invalidated) {
            throw HttpError{404, "SessionClosed",
                            "session '" + entry.id + "' was closed because the circuit changed"};
        }
    }

    json session_json(const SessionEntry& entry) const
    {
        const SimSession& s = entry.session;
        return json{{"id", entry.id},
                    {"state", entry.invalidated ? "closed" : session_state_name(s.state())},
                    {"revision", entry.revision},
                    {"cursor", s.cursor()},
                    {"duration_ticks", s.config().duration_ticks},
                    {"drop_parity", std::string(parity_name(s.config().drop_parity))},
                    {"faults", s.faults().components}};
    }
};

Service::Service(CircuitDocument initial) : state_(std::make_shared<State>())
{
    state_->doc = std::move(initial);
}

Service::~Service() = default;

std::uint64_t Service::revision() const
{
    return state_->snapshot().second;
}

void Service::mount(httplib::Server& server)
{
    const auto state = state_;

    // Wraps a handler so library and HTTP errors map onto status codes.
    const auto guarded = [](auto handler) {
        return [handler](const httplib::Request& req, httplib::Response& res) {
            try {
                handler(req, res);
            } catch (const HttpError& e) {
                json body{{"error", e.type}, {"message", e.message}};
                if (!e.detail.is_null())
                    body["detail"] = e.detail;
                reply(res, e.status, body);
            } catch (const ValidationFailed& e) {
                reply(res, 422, {{"error", "ValidationFailed"}, {"message", e.what()}, {"detail", e.report()}});
            } catch (const NoPath& e) {
                reply(res, 404, {{"error", "NoPath"}, {"message", e.what()}});
            } catch (const UnknownComponent& e) {
                reply(res, 404, {{"error", "UnknownComponent"}, {"message", e.what()}});
            } catch (const UnsupportedVersion& e) {
                reply(res, 400, {{"error", "UnsupportedVersion"}, {"message", e.what()}});
            } catch (const Error& e) {
                reply(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
            }
        };
    };

    server.Get("/api/circuit", guarded([state](const httplib::Request&, httplib::Response& res) {
        const auto [doc, revision] = state->snapshot();
        reply(res, 200, {{"revision", revision}, {"document", doc}});
    }));

    server.Put("/api/circuit", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        std::optional<std::uint64_t> expected;
        if (req.has_header("If-Match"))
            expected = parse_index(req.get_header_value("If-Match"), "If-Match");
        else if (req.has_param("revision"))
            expected = query_index(req, "revision");

        if (!body.contains("format_version"))
            throw HttpError{400, "ParseError", "missing field 'format_version'"};
        if (body["format_version"] != circuit_format_version)
            throw HttpError{400, "UnsupportedVersion", "unsupported format_version"};
        const Circuit circuit = circuit_from_json(body);
        if (const auto violations = check_circuit(circuit); !violations.empty()) {
            throw HttpError{422, "InvalidCircuit", "circuit has structural violations", json(violations)};
        }

        std::uint64_t revision = 0;
        {
            std::unique_lock lock(state->doc_mutex);
            if (expected && *expected != state->revision) {
                throw HttpError{409, "RevisionConflict",
                                "expected revision " + std::to_string(*expected) + ", current is " +
                                    std::to_string(state->revision)};
            }
            state->doc = CircuitDocument{circuit_format_version, circuit};
            revision = ++state->revision;
        }
        std::vector<std::shared_ptr<SessionEntry>> stale;
        {
            std::lock_guard lock(state->sessions_mutex);
            for (auto& [id, entry] : state->sessions)
                stale.push_back(entry);
        }
        for (auto& entry : stale) {
            std::lock_guard lock(entry->mutex);
            if (entry->revision != revision)
                entry->invalidated = true;
        }
        reply(res, 200, {{"revision", revision}});
    }));

    server.Post("/api/generate", guarded([](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const std::string family = text_member(body, "family", "omega");
        const auto size = integer_member(body, "size", 8);
        const auto copies = integer_member(body, "copies", 2);
        if (size < 0 || copies < 0)
            throw HttpError{400, "ParseError", "size and copies must be non-negative"};
        Circuit circuit;
        if (family == "omega")
            circuit = generate_omega(static_cast<std::size_t>(size));
        else if (family == "extra-stage" || family == "extra_stage")
            circuit = generate_extra_stage(static_cast<std::size_t>(size));
        else if (family == "replicated")
            circuit = generate_replicated(generate_omega(static_cast<std::size_t>(size)),
                                          static_cast<std::size_t>(copies));
        else
            throw HttpError{400, "ParseError", "unknown family '" + family + "'"};
        reply(res, 200, CircuitDocument{circuit_format_version, std::move(circuit)});
    }));

    server.Post("/api/validate", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const auto [doc, revision] = state->snapshot();
        json report = validate_text(doc.circuit, text_member(body, "path"), text_member(body, "faults"));
        report["revision"] = revision;
        reply(res, 200, report);
    }));

    server.Get("/api/paths", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const auto src = query_index(req, "src");
        const auto dst = query_index(req, "dst");
        const auto k = query_index(req, "k", 2);
        const auto [doc, revision] = state->snapshot();
        json body = max_disjoint_paths(doc.circuit, src, dst, k);
        body["revision"] = revision;
        reply(res, 200, body);
    }));

    server.Post("/api/sessions", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const SimConfig config{static_cast<int>(integer_member(body, "ticks", default_duration_ticks)),
                               parity_member(text_member(body, "parity"))};
        const auto [doc, revision] = state->snapshot();
        ValidationReport report = validate_text(doc.circuit, text_member(body, "path"), text_member(body, "faults"));
        if (!report.ok())
            throw ValidationFailed(std::move(report));
        SimSession session(doc.circuit, PathSpec::parse(text_member(body, "path")),
                           FaultSet::parse(text_member(body, "faults")), config);

        std::shared_ptr<SessionEntry> entry;
        {
            std::lock_guard lock(state->sessions_mutex);
            const std::string id = "s" + std::to_string(state->next_session++);
            entry = std::make_shared<SessionEntry>(id, std::move(session), revision);
            state->sessions.emplace(id, entry);
        }
        // A PUT may have landed between the snapshot and registration.
        std::lock_guard lock(entry->mutex);
        if (state->snapshot().second != revision)
            entry->invalidated = true;
        reply(res, 201, state->session_json(*entry));
    }));

    server.Get(R"(/api/sessions/([^/]+))", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const auto entry = state->find_session(req.matches[1]);
        std::lock_guard lock(entry->mutex);
        reply(res, 200, state->session_json(*entry));
    }));

    server.Post(R"(/api/sessions/([^/]+)/step)", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const auto n = integer_member(body, "n", 1);
        const auto entry = state->find_session(req.matches[1]);
        std::lock_guard lock(entry->mutex);
        State::require_current(*entry);
        if (n < 0 || n > entry->session.remaining()) {
            throw HttpError{409, "PastEnd",
                            "cannot step " + std::to_string(n) + " ticks; " +
                                std::to_string(entry->session.remaining()) + " remain"};
        }
        const auto events = entry->session.step(static_cast<int>(n));
        json out = state->session_json(*entry);
        out["events"] = events;
        reply(res, 200, out);
    }));

    server.Post(R"(/api/sessions/([^/]+)/faults)", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const json body = parse_body(req);
        const auto add = id_list(body, "add");
        const auto remove = id_list(body, "remove");
        const auto entry = state->find_session(req.matches[1]);
        std::lock_guard lock(entry->mutex);
        State::require_current(*entry);
        for (const auto c : add) {
            if (c >= entry->session.circuit().component_count())
                throw HttpError{422, "UnknownComponent", std::string(invalid_component_message)};
        }
        for (const auto c : remove) {
            if (c >= entry->session.circuit().component_count())
                throw HttpError{422, "UnknownComponent", std::string(invalid_component_message)};
        }
        for (const auto c : add)
            entry->session.inject_fault(c);
        for (const auto c : remove)
            entry->session.remove_fault(c);
        json out = state->session_json(*entry);
        out["effective_tick"] = entry->session.cursor();
        reply(res, 200, out);
    }));

    server.Get(R"(/api/sessions/([^/]+)/stream)", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const auto entry = state->find_session(req.matches[1]);
        {
            std::lock_guard lock(entry->mutex);
            State::require_current(*entry);
        }
        const auto interval = std::chrono::milliseconds(query_index(req, "interval_ms", 0));
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            "text/event-stream", [entry, interval](std::size_t, httplib::DataSink& sink) {
                std::string chunk;
                bool done = false;
                {
                    std::lock_guard lock(entry->mutex);
                    SimSession& s = entry->session;
                    if (entry->invalidated) {
                        chunk = sse("error", {{"error", "SessionClosed"}, {"cursor", s.cursor()}});
                        done = true;
                    } else if (s.state() == SimSession::State::running) {
                        chunk = sse("tick", s.step(1).front());
                    } else {
                        chunk = sse("summary", summary(s.snapshot()));
                        done = true;
                    }
                }
                if (!sink.write(chunk.data(), chunk.size()))
                    return false;
                if (done)
                    sink.done();
                else if (interval.count() > 0)
                    std::this_thread::sleep_for(interval);
                return true;
            });
    }));

    server.Delete(R"(/api/sessions/([^/]+))", guarded([state](const httplib::Request& req, httplib::Response& res) {
        std::shared_ptr<SessionEntry> entry;
        {
            std::lock_guard lock(state->sessions_mutex);
            const auto it = state->sessions.find(req.matches[1]);
            if (it == state->sessions.end())
                throw HttpError{404, "UnknownSession", "no session '" + std::string(req.matches[1]) + "'"};
            entry = it->second;
            state->sessions.erase(it);
        }
        std::lock_guard lock(entry->mutex);
        json out = state->session_json(*entry);
        out["report"] = entry->session.close();
        out["state"] = "closed";
        reply(res, 200, out);
    }));

    server.Get("/api/render.svg", guarded([state](const httplib::Request& req, httplib::Response& res) {
        const auto [doc, revision] = state->snapshot();
        const RenderOptions options{.bug_compat = req.has_param("bug_compat")};
        RenderPlan plan;
        if (!req.has_param("path")) {
            plan = plan_circuit(doc.circuit, options);
        } else {
            const PathSpec path = PathSpec::parse(req.get_param_value("path"));
            const FaultSet faults = FaultSet::parse(req.get_param_value("faults"));
            PathState frame_state = PathState::green;
            if (req.has_param("frame")) {
                ValidationReport report = validate(doc.circuit, path, faults);
                if (!report.ok())
                    throw ValidationFailed(std::move(report));
                const auto tick = query_index(req, "frame");
                const auto parity = parity_member(req.get_param_value("parity"));
                const auto event = tick_event(static_cast<int>(tick), faults_on_path(doc.circuit, path, faults), parity);
                frame_state = event.outcome == Outcome::dropped ? PathState::red : PathState::green;
            } else if (req.has_param("state")) {
                const std::string s = req.get_param_value("state");
                if (s != "green" && s != "red")
                    throw HttpError{400, "ParseError", "state must be green or red"};
                frame_state = s == "red" ? PathState::red : PathState::green;
            }
            plan = plan_simulation_frame(doc.circuit, path, faults, frame_state, options);
        }
        res.set_header("X-Circuit-Revision", std::to_string(revision));
        res.set_content(svg_text(plan), "image/svg+xml");
    }));
}

int port_from_environment()
{
    if (const char* env = std::getenv("MINFORGE_PORT")) {
        try {
            const int port = std::stoi(env);
            if (port > 0 && port < 65536)
                return port;
        } catch (const std::exception&) {
        }
    }
    return default_service_port;
}

bool serve(Service& service, const std::string& host, int port)
{
    httplib::Server server;
    service.mount(server);
    return server.listen(host, port);
}

} // namespace minforge
