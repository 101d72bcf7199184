#pragma once

#include "minforge/model.hpp"
#include "minforge/paths.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace minforge {

/// 15 seconds of animation at 10 ticks per second.
constexpr int default_duration_ticks = 150;

/// Which half of the alternating packet sequence is lost when the path
/// carries a faulty component.
enum class DropParity { drop_first, deliver_first };

std::string_view parity_name(DropParity parity);
std::optional<DropParity> parity_from_name(std::string_view name);

struct SimConfig {
    int duration_ticks = default_duration_ticks;
    DropParity drop_parity = DropParity::drop_first;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class Outcome { delivered, dropped };
enum class PathState { green, red };

std::string_view outcome_name(Outcome outcome);
std::string_view state_name(PathState state);

struct SimEvent {
    int tick = 0;
    int packet_id = 0;
    Outcome outcome = Outcome::delivered;
    std::optional<ComponentId> drop_component;

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct SimulationReport {
    SimConfig config;
    std::string path_raw;
    std::vector<SimEvent> events;
    int delivered = 0;
    int dropped = 0;
    std::vector<PathState> path_state_per_tick;
    /// Set when a session was closed before reaching its duration.
    bool partial = false;

    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Outcome of one tick given the faults currently lying on the path, in path
/// order. Dropped packets stop at the first of them.
SimEvent tick_event(int tick, const std::vector<ComponentId>& on_path_faults, DropParity parity);

/// Faults that lie on the path, ordered by their first appearance along it.
std::vector<ComponentId> faults_on_path(const Circuit& circuit, const PathSpec& path,
                                        const FaultSet& faults);

/// One packet per tick for the configured duration. Throws ValidationFailed,
/// InvalidArgument for a non-positive duration.
SimulationReport run(const Circuit& circuit, const PathSpec& path, const FaultSet& faults,
                     const SimConfig& config = {});

/// Incremental run whose fault set may change between ticks.
class SimSession {
public:
    enum class State { running, finished, closed };

    /// Throws ValidationFailed, InvalidArgument.
    SimSession(Circuit circuit, PathSpec path, FaultSet faults, SimConfig config = {});

    /// Advances n ticks under the current fault set. Throws SessionClosed, or
    /// PastEnd (without advancing) when fewer than n ticks remain.
    std::vector<SimEvent> step(int n = 1);

    /// Takes effect from the next tick. Throws SessionClosed, UnknownComponent.
    void inject_fault(ComponentId component);
    void remove_fault(ComponentId component);

    /// Ends the session; the report is partial when ticks remain.
    SimulationReport close();

    State state() const;
    int cursor() const { return cursor_; }
    int remaining() const { return config_.duration_ticks - cursor_; }
    const FaultSet& faults() const { return faults_; }
    const SimConfig& config() const { return config_; }
    const std::vector<SimEvent>& events() const { return events_; }
    const Circuit& circuit() const { return circuit_; }
    const PathSpec& path() const { return path_; }

    /// Report over the events so far.
    SimulationReport snapshot() const;

private:
    void require_open() const;

    Circuit circuit_;
    PathSpec path_;
    FaultSet faults_;
    SimConfig config_;
    std::vector<ComponentId> on_path_faults_;
    std::vector<SimEvent> events_;
    int cursor_ = 0;
    bool closed_ = false;
};

/// Tab-separated record per dropped packet, ordered by tick, after a header
/// line. Throws SinkError.
void export_drop_log(const SimulationReport& report, std::ostream& sink);

} // namespace minforge
