#include "minforge/sim.hpp"

#include <algorithm>
#include <ostream>

namespace minforge {

std::string_view parity_name(DropParity parity)
{
    return parity == DropParity::drop_first ? "drop_first" : "deliver_first";
}

std::optional<DropParity> parity_from_name(std::string_view name)
{
    if (name == "drop_first" || name == "drop-first")
        return DropParity::drop_first;
    if (name == "deliver_first" || name == "deliver-first")
        return DropParity::deliver_first;
    return std::nullopt;
}

std::string_view outcome_name(Outcome outcome)
{
    return outcome == Outcome::delivered ? "delivered" : "dropped";
}

std::string_view state_name(PathState state)
{
    return state == PathState::green ? "green" : "red";
}

SimEvent tick_event(int tick, const std::vector<ComponentId>& on_path_faults, DropParity parity)
{
    SimEvent event{tick, tick, Outcome::delivered, std::nullopt};
    if (on_path_faults.empty())
        return event;
    const bool even = tick % 2 == 0;
    const bool drop = parity == DropParity::drop_first ? even : !even;
    if (drop) {
        event.outcome = Outcome::dropped;
        event.drop_component = on_path_faults.front();
    }
    return event;
}

std::vector<ComponentId> faults_on_path(const Circuit& circuit, const PathSpec& path,
                                        const FaultSet& faults)
{
    std::vector<ComponentId> out;
    for (const auto c : path_walk(circuit, path)) {
        if (faults.contains(c) && std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    }
    return out;
}

namespace {

void require_valid(const Circuit& circuit, const PathSpec& path, const FaultSet& faults,
                   const SimConfig& config)
{
    if (config.duration_ticks < 1)
        throw InvalidArgument("duration must be at least one tick");
    ValidationReport report = validate(circuit, path, faults);
    if (!report.ok())
        throw ValidationFailed(std::move(report));
}

SimulationReport summarize(const SimConfig& config, const std::string& path_raw,
                           std::vector<SimEvent> events, bool partial)
{
    SimulationReport report;
    report.config = config;
    report.path_raw = path_raw;
    report.partial = partial;
    report.path_state_per_tick.reserve(events.size());
    for (const auto& e : events) {
        const bool dropped = e.outcome == Outcome::dropped;
        (dropped ? report.dropped : report.delivered) += 1;
        report.path_state_per_tick.push_back(dropped ? PathState::red : PathState::green);
    }
    report.events = std::move(events);
    return report;
}

} // namespace

SimulationReport run(const Circuit& circuit, const PathSpec& path, const FaultSet& faults,
                     const SimConfig& config)
{
    require_valid(circuit, path, faults, config);
    const auto on_path = faults_on_path(circuit, path, faults);
    std::vector<SimEvent> events;
    events.reserve(static_cast<std::size_t>(config.duration_ticks));
    for (int t = 0; t < config.duration_ticks; ++t)
        events.push_back(tick_event(t, on_path, config.drop_parity));
    return summarize(config, path.raw, std::move(events), false);
}

SimSession::SimSession(Circuit circuit, PathSpec path, FaultSet faults, SimConfig config)
    : circuit_(std::move(circuit)), path_(std::move(path)), faults_(std::move(faults)), config_(config)
{
    require_valid(circuit_, path_, faults_, config_);
    on_path_faults_ = faults_on_path(circuit_, path_, faults_);
}

SimSession::State SimSession::state() const
{
    if (closed_)
        return State::closed;
    return cursor_ >= config_.duration_ticks ? State::finished : State::running;
}

void SimSession::require_open() const
{
    if (closed_)
        throw SessionClosed("session is closed");
}

std::vector<SimEvent> SimSession::step(int n)
{
    require_open();
    if (n < 0)
        throw InvalidArgument("step count must not be negative");
    if (n > remaining()) {
        throw PastEnd("cannot step " + std::to_string(n) + " ticks; " + std::to_string(remaining()) +
                      " remain");
    }
    std::vector<SimEvent> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(tick_event(cursor_, on_path_faults_, config_.drop_parity));
        events_.push_back(out.back());
        ++cursor_;
    }
    return out;
}

void SimSession::inject_fault(ComponentId component)
{
    require_open();
    circuit_.component(component);
    if (!faults_.contains(component)) {
        auto ids = faults_.components;
        ids.push_back(component);
        faults_ = FaultSet::from_components(std::move(ids));
        on_path_faults_ = faults_on_path(circuit_, path_, faults_);
    }
}

void SimSession::remove_fault(ComponentId component)
{
    require_open();
    circuit_.component(component);
    auto ids = faults_.components;
    ids.erase(std::remove(ids.begin(), ids.end(), component), ids.end());
    faults_ = FaultSet::from_components(std::move(ids));
    on_path_faults_ = faults_on_path(circuit_, path_, faults_);
}

SimulationReport SimSession::snapshot() const
{
    return summarize(config_, path_.raw, events_, cursor_ < config_.duration_ticks);
}

SimulationReport SimSession::close()
{
    require_open();
    closed_ = true;
    return snapshot();
}

namespace {

std::string escape_field(std::string_view text)
{
    std::string out;
    for (const char ch : text) {
        switch (ch) {
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\\': out += "\\\\"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace

void export_drop_log(const SimulationReport& report, std::ostream& sink)
{
    std::vector<const SimEvent*> drops;
    for (const auto& e : report.events) {
        if (e.outcome == Outcome::dropped)
            drops.push_back(&e);
    }
    std::stable_sort(drops.begin(), drops.end(),
                     [](const SimEvent* x, const SimEvent* y) { return x->tick < y->tick; });

    const std::string path = escape_field(report.path_raw);
    sink << "tick\tpacket_id\tcomponent\tpath\n";
    for (const auto* e : drops)
        sink << e->tick << '\t' << e->packet_id << '\t' << *e->drop_component << '\t' << path << '\n';
    sink.flush();
    if (!sink)
        throw SinkError("failed to write drop log");
}

} // namespace minforge
