#pragma once

#include "minforge/io.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace minforge {

constexpr int default_service_port = 7420;

/// HTTP facade over one current circuit document and its simulation
/// sessions. Circuit mutations and each session are serialized; reads run
/// concurrently.
class Service {
public:
    explicit Service(CircuitDocument initial = {});
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Registers every /api route on the server.
    void mount(httplib::Server& server);

    std::uint64_t revision() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// Port from MINFORGE_PORT, falling back to default_service_port.
int port_from_environment();

/// Blocks serving on host:port until the process stops. Returns false when
/// the address cannot be bound.
bool serve(Service& service, const std::string& host, int port);

} // namespace minforge
