#include "minforge/generators.hpp"
#include "minforge/sim.hpp"

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace minforge;
using minforge::testing::tiny3;

namespace {

SimulationReport run_tiny3(std::string_view faults, int ticks, DropParity parity = DropParity::drop_first)
{
    return run(tiny3(), PathSpec::parse("01"), FaultSet::parse(faults), SimConfig{ticks, parity});
}

} // namespace

TEST(Run, AlternatesAtFaultOnPath)
{
    const auto r = run_tiny3("1", 10);
    EXPECT_EQ(r.dropped, 5);
    EXPECT_EQ(r.delivered, 5);
    for (const auto& e : r.events) {
        if (e.outcome == Outcome::dropped)
            EXPECT_EQ(e.drop_component, 1u);
        else
            EXPECT_FALSE(e.drop_component);
    }
    EXPECT_EQ(r.events[0].outcome, Outcome::dropped);
    EXPECT_EQ(r.events[1].outcome, Outcome::delivered);
}

TEST(Run, NoFaultsDeliversEverything)
{
    const auto r = run_tiny3("", 10);
    EXPECT_EQ(r.delivered, 10);
    EXPECT_EQ(r.dropped, 0);
    EXPECT_TRUE(std::all_of(r.path_state_per_tick.begin(), r.path_state_per_tick.end(),
                            [](PathState s) { return s == PathState::green; }));
}

TEST(Run, FaultAtDestination)
{
    const auto r = run_tiny3("2", 10);
    EXPECT_EQ(r.dropped, 5);
    EXPECT_EQ(r.events[0].drop_component, 2u);
}

TEST(Run, DropsAtFirstFaultAlongThePath)
{
    const auto r = run_tiny3("21", 4);
    EXPECT_EQ(r.events[0].drop_component, 1u);
}

TEST(Run, OffPathFaultDropsNothing)
{
    CircuitBuilder b;
    b.add(Kind::source_terminal, {100, 100});
    b.add(Kind::switch_2x2, {300, 100});
    b.add(Kind::dest_terminal, {500, 100});
    b.add(Kind::switch_2x2, {300, 300});
    b.connect({0, 0}, {1, 0});
    b.connect({1, 2}, {2, 0});
    const auto r = run(b.build(), PathSpec::parse("01"), FaultSet::parse("3"), SimConfig{6});
    EXPECT_EQ(r.delivered, 6);
}

TEST(Run, DefaultsAndOddDurations)
{
    const auto r = run(tiny3(), PathSpec::parse("01"), FaultSet::parse("1"));
    EXPECT_EQ(r.config.duration_ticks, 150);
    EXPECT_EQ(r.dropped, 75);

    EXPECT_EQ(run_tiny3("1", 7).dropped, 4);
    EXPECT_EQ(run_tiny3("1", 7, DropParity::deliver_first).dropped, 3);
}

TEST(Run, ParityFlipSwapsPattern)
{
    const auto a = run_tiny3("1", 12, DropParity::drop_first);
    const auto b = run_tiny3("1", 12, DropParity::deliver_first);
    EXPECT_EQ(a.delivered, b.delivered);
    for (std::size_t t = 0; t < a.events.size(); ++t)
        EXPECT_NE(a.events[t].outcome, b.events[t].outcome);
}

TEST(Run, InvariantsHold)
{
    const auto r = run_tiny3("1", 9);
    EXPECT_EQ(r.delivered + r.dropped, 9);
    ASSERT_EQ(r.path_state_per_tick.size(), r.events.size());
    for (std::size_t t = 0; t < r.events.size(); ++t) {
        EXPECT_EQ(r.events[t].tick, static_cast<int>(t));
        EXPECT_EQ(r.events[t].packet_id, static_cast<int>(t));
        EXPECT_EQ(r.path_state_per_tick[t] == PathState::red, r.events[t].outcome == Outcome::dropped);
    }
    EXPECT_FALSE(r.partial);
}

TEST(Run, Errors)
{
    try {
        run(tiny3(), PathSpec::parse("05"), FaultSet{});
        FAIL() << "expected ValidationFailed";
    } catch (const ValidationFailed& e) {
        EXPECT_STREQ(e.what(), "Invalid Path. Please check the input.");
        EXPECT_TRUE(e.report().has(ValidationFlag::Type::invalid_path));
    }
    EXPECT_THROW(run(tiny3(), PathSpec::parse("01"), FaultSet{}, SimConfig{0}), InvalidArgument);
}

TEST(Run, LeavesInputsUntouched)
{
    const Circuit c = tiny3();
    const Circuit copy = c;
    run(c, PathSpec::parse("01"), FaultSet::parse("1"), SimConfig{20});
    EXPECT_EQ(c, copy);
}

TEST(Session, InjectResumesAlternationOnGlobalTicks)
{
    SimSession s(tiny3(), PathSpec::parse("01"), FaultSet{}, SimConfig{10});
    const auto first = s.step(4);
    EXPECT_TRUE(std::all_of(first.begin(), first.end(),
                            [](const SimEvent& e) { return e.outcome == Outcome::delivered; }));
    s.inject_fault(1);
    const auto second = s.step(4);
    // Tick 4 is even, so under drop_first it drops.
    EXPECT_EQ(second[0].tick, 4);
    EXPECT_EQ(second[0].outcome, Outcome::dropped);
    EXPECT_EQ(second[1].outcome, Outcome::delivered);
    EXPECT_EQ(second[2].outcome, Outcome::dropped);
    s.remove_fault(1);
    EXPECT_EQ(s.step(1)[0].outcome, Outcome::delivered);
}

TEST(Session, Errors)
{
    SimSession s(tiny3(), PathSpec::parse("01"), FaultSet{}, SimConfig{3});
    EXPECT_THROW(s.inject_fault(9), UnknownComponent);
    EXPECT_THROW(s.step(4), PastEnd);
    EXPECT_EQ(s.cursor(), 0);
    s.step(3);
    EXPECT_EQ(s.state(), SimSession::State::finished);
    EXPECT_THROW(s.step(1), PastEnd);
    s.close();
    EXPECT_THROW(s.step(1), SessionClosed);
    EXPECT_THROW(s.inject_fault(1), SessionClosed);
    EXPECT_THROW(s.close(), SessionClosed);
    EXPECT_EQ(s.state(), SimSession::State::closed);
}

TEST(Session, EarlyCloseIsPartial)
{
    SimSession s(tiny3(), PathSpec::parse("01"), FaultSet::parse("1"), SimConfig{10});
    s.step(3);
    const auto r = s.close();
    EXPECT_TRUE(r.partial);
    EXPECT_EQ(r.events.size(), 3u);
    EXPECT_EQ(r.delivered + r.dropped, 3);
}

TEST(Session, StepwiseEqualsBatch)
{
    const Circuit c = generate_omega(8);
    const auto path = PathSpec::parse("0,8,16,24");
    const auto faults = FaultSet::parse("12,");
    const SimConfig config{15, DropParity::deliver_first};
    SimSession s(c, path, faults, config);
    for (int i = 0; i < config.duration_ticks; ++i)
        s.step(1);
    EXPECT_EQ(s.close(), run(c, path, faults, config));
}

TEST(DropLog, OneRecordPerDrop)
{
    std::ostringstream out;
    export_drop_log(run_tiny3("1", 10), out);
    const std::string text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
    EXPECT_EQ(text.substr(0, text.find('\n')), "tick\tpacket_id\tcomponent\tpath");
    EXPECT_NE(text.find("\n0\t0\t1\t01\n2\t2\t1\t01\n"), std::string::npos);
}

TEST(DropLog, EmptyLogHasHeaderOnly)
{
    std::ostringstream out;
    export_drop_log(run_tiny3("", 10), out);
    EXPECT_EQ(out.str(), "tick\tpacket_id\tcomponent\tpath\n");
}

TEST(DropLog, Deterministic)
{
    const auto r = run_tiny3("1", 30);
    std::ostringstream a;
    std::ostringstream b;
    export_drop_log(r, a);
    export_drop_log(r, b);
    EXPECT_EQ(a.str(), b.str());

    std::ostringstream bad;
    bad.setstate(std::ios::failbit);
    EXPECT_THROW(export_drop_log(r, bad), SinkError);
}
