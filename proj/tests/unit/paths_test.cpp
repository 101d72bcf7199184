#include "minforge/generators.hpp"
#include "minforge/paths.hpp"

#include "support/fixtures.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace minforge;
using namespace minforge::testing;

using Indices = std::vector<std::size_t>;

TEST(ParseIndices, LegacyDigits)
{
    EXPECT_EQ(parse_indices("051"), (Indices{0, 5, 1}));
    EXPECT_EQ(parse_indices(""), Indices{});
}

TEST(ParseIndices, SeparatedForm)
{
    EXPECT_EQ(parse_indices("10,2,3"), (Indices{10, 2, 3}));
    EXPECT_EQ(parse_indices(" 10 , 2,3 "), (Indices{10, 2, 3}));
    EXPECT_EQ(parse_indices("12,"), (Indices{12}));
}

TEST(ParseIndices, Malformed)
{
    EXPECT_THROW(parse_indices("0a1"), ParseError);
    EXPECT_THROW(parse_indices("0 1"), ParseError);
    EXPECT_THROW(parse_indices("1,,2"), ParseError);
    EXPECT_THROW(parse_indices("1,x"), ParseError);
    EXPECT_THROW(parse_indices(","), ParseError);
    EXPECT_THROW(parse_indices("1,-2"), ParseError);
    EXPECT_THROW(parse_indices("1,99999999999999999999999"), ParseError);
}

TEST(ParseIndices, FormatThenParseIsIdentity)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> len(0, 12);
    std::uniform_int_distribution<std::size_t> small(0, 9);
    std::uniform_int_distribution<std::size_t> large(0, 400);
    for (int i = 0; i < 200; ++i) {
        Indices xs(len(rng));
        for (auto& x : xs)
            x = i % 2 ? small(rng) : large(rng);
        EXPECT_EQ(parse_indices(format_indices(xs)), xs) << format_indices(xs);
    }
    EXPECT_EQ(format_indices({0, 5, 1}), "051");
}

TEST(PathSpec, EmptyPathIsParseErrorButEmptyFaultsAreFine)
{
    EXPECT_THROW(PathSpec::parse(""), ParseError);
    EXPECT_TRUE(FaultSet::parse("").components.empty());
}

TEST(FaultSet, DeduplicatesKeepingFirstAppearance)
{
    const FaultSet f = FaultSet::parse("3113");
    EXPECT_EQ(f.components, (Indices{3, 1}));
    EXPECT_EQ(f.raw, "3113");
}

TEST(Validate, PathOutOfRange)
{
    const auto report = validate(tiny3(), PathSpec::parse("05"), FaultSet::parse(""));
    ASSERT_FALSE(report.ok());
    ASSERT_EQ(report.errors().size(), 1u);
    EXPECT_EQ(report.errors()[0]->type, ValidationFlag::Type::invalid_path);
    EXPECT_EQ(report.errors()[0]->message, "Invalid Path. Please check the input.");
}

TEST(Validate, ComponentOutOfRange)
{
    const auto report = validate(tiny3(), PathSpec::parse("01"), FaultSet::parse("9"));
    ASSERT_EQ(report.errors().size(), 1u);
    EXPECT_EQ(report.errors()[0]->type, ValidationFlag::Type::invalid_component);
    EXPECT_EQ(report.errors()[0]->message, "Invalid Component number. Please check the input.");
}

TEST(Validate, IndexEqualToCountIsOutOfRange)
{
    // Two wires and three components: ids 2 and 3 are one past the end.
    EXPECT_TRUE(validate(tiny3(), PathSpec::parse("2"), FaultSet{}).has(ValidationFlag::Type::invalid_path));
    EXPECT_TRUE(validate(tiny3(), PathSpec::parse("0"), FaultSet::parse("3"))
                    .has(ValidationFlag::Type::invalid_component));
}

TEST(Validate, BothErrorsInOrder)
{
    const auto report = validate(tiny3(), PathSpec::parse("7"), FaultSet::parse("8"));
    ASSERT_EQ(report.flags.size(), 2u);
    EXPECT_EQ(report.flags[0].type, ValidationFlag::Type::invalid_path);
    EXPECT_EQ(report.flags[1].type, ValidationFlag::Type::invalid_component);
}

TEST(Validate, FaultOnPathIsClean)
{
    const auto report = validate(tiny3(), PathSpec::parse("01"), FaultSet::parse("1"));
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(report.flags.empty());
}

TEST(Validate, Warnings)
{
    const Circuit c = generate_omega(4);
    // Wires 0 and 11 share no component.
    const auto gap = validate(c, PathSpec::parse("0,11"), FaultSet{});
    EXPECT_TRUE(gap.ok());
    EXPECT_TRUE(gap.has(ValidationFlag::Type::non_contiguous));

    const auto off = validate(tiny3(), PathSpec::parse("0"), FaultSet::parse("2"));
    EXPECT_TRUE(off.ok());
    ASSERT_EQ(off.warnings().size(), 1u);
    EXPECT_EQ(off.warnings()[0]->type, ValidationFlag::Type::off_path_fault);
    EXPECT_EQ(off.warnings()[0]->items, Indices{2});
}

TEST(ValidateText, TotalOverArbitraryText)
{
    std::mt19937 rng(9);
    const std::string alphabet = "0123456789,a -x";
    std::uniform_int_distribution<std::size_t> len(0, 8);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    const Circuit c = tiny3();
    for (int i = 0; i < 500; ++i) {
        std::string path;
        std::string faults;
        for (std::size_t k = len(rng); k > 0; --k)
            path += alphabet[pick(rng)];
        for (std::size_t k = len(rng); k > 0; --k)
            faults += alphabet[pick(rng)];
        EXPECT_NO_THROW(validate_text(c, path, faults));
    }
    const auto report = validate_text(c, "0a", "x");
    EXPECT_TRUE(report.has(ValidationFlag::Type::path_syntax));
    EXPECT_TRUE(report.has(ValidationFlag::Type::fault_syntax));
    EXPECT_EQ(validate_text(c, "05", "").errors()[0]->message, invalid_path_message);
}

TEST(PathComponents, FirstTouchOrder)
{
    const Circuit c = tiny3();
    EXPECT_EQ(path_components(c, PathSpec::parse("01")), (Indices{0, 1, 2}));
    EXPECT_EQ(path_components(c, PathSpec::parse("0")), (Indices{0, 1}));
    EXPECT_EQ(path_components(c, PathSpec::parse("10")), (Indices{1, 2, 0}));
    EXPECT_THROW(path_components(c, PathSpec::parse("3")), InvalidPath);
}

TEST(PathWalk, FollowsTheChainFromItsFreeEnd)
{
    const Circuit c = tiny3();
    EXPECT_EQ(path_walk(c, PathSpec::parse("01")), (Indices{0, 1, 2}));
    EXPECT_EQ(path_walk(c, PathSpec::parse("10")), (Indices{2, 1, 0}));
}

TEST(WireDirection, OutputToInput)
{
    CircuitBuilder b;
    b.add(Kind::switch_2x2, {0, 0});
    b.add(Kind::switch_2x2, {200, 0});
    b.connect({1, 0}, {0, 2});  // drawn backwards: input -> output
    b.connect({0, 4}, {1, 5});  // chaining ports decide nothing
    const Circuit c = b.build();
    EXPECT_EQ(wire_direction(c, c.wires()[0]).from, 0u);
    EXPECT_EQ(wire_direction(c, c.wires()[0]).to, 1u);
    EXPECT_EQ(wire_direction(c, c.wires()[1]).from, 0u);
}

TEST(AreDisjoint, PlanesOfReplicatedOmega)
{
    const Circuit c = generate_replicated(generate_omega(4), 2);
    const auto result = max_disjoint_paths(c, 0, c.component_count() - 1, 2);
    ASSERT_EQ(result.wires.size(), 2u);
    const std::vector<PathSpec> paths{PathSpec::from_wires(result.wires[0]), PathSpec::from_wires(result.wires[1])};
    EXPECT_TRUE(are_disjoint(c, paths).disjoint);
}

TEST(AreDisjoint, SamePathTwiceSharesFirstIntermediate)
{
    const Circuit c = generate_omega(4);
    const auto path = PathSpec::from_wires(max_disjoint_paths(c, 0, 8, 1).wires[0]);
    const auto check = are_disjoint(c, {path, path});
    EXPECT_FALSE(check.disjoint);
    EXPECT_EQ(check.shared, path_walk(c, path)[1]);
}

TEST(AreDisjoint, Errors)
{
    const Circuit c = generate_omega(4);
    const auto to8 = PathSpec::from_wires(max_disjoint_paths(c, 0, 8, 1).wires[0]);
    const auto to9 = PathSpec::from_wires(max_disjoint_paths(c, 0, 9, 1).wires[0]);
    EXPECT_THROW(are_disjoint(c, {to8, to9}), MismatchedEndpoints);
    EXPECT_THROW(are_disjoint(c, {to8, PathSpec::parse("99,")}), InvalidPath);
}

TEST(MaxDisjointPaths, OmegaIsUniquePath)
{
    const Circuit c = generate_omega(8);
    for (ComponentId s = 0; s < 8; ++s) {
        for (ComponentId d = 20; d < 28; ++d) {
            const auto r = max_disjoint_paths(c, s, d, 3);
            EXPECT_EQ(r.disjointness, 1u);
            EXPECT_EQ(r.paths[0].front(), s);
            EXPECT_EQ(r.paths[0].back(), d);
            EXPECT_EQ(r.paths[0].size(), 5u);
        }
    }
}

TEST(MaxDisjointPaths, ReplicatedOmegaReachesCopies)
{
    const Circuit c = generate_replicated(generate_omega(4), 3);
    const auto sources = components_of_kind(c, Kind::source_terminal);
    const auto dests = components_of_kind(c, Kind::dest_terminal);
    for (const auto s : sources) {
        for (const auto d : dests) {
            const auto r = max_disjoint_paths(c, s, d, 3);
            EXPECT_EQ(r.disjointness, 3u);
            std::vector<PathSpec> specs;
            for (const auto& w : r.wires)
                specs.push_back(PathSpec::from_wires(w));
            EXPECT_TRUE(are_disjoint(c, specs).disjoint);
        }
    }
    EXPECT_EQ(max_disjoint_paths(c, 0, c.component_count() - 1, 2).disjointness, 2u);
}

TEST(MaxDisjointPaths, Errors)
{
    const Circuit c = generate_omega(4);
    EXPECT_THROW(max_disjoint_paths(c, 0, 0, 1), SameEndpoint);
    EXPECT_THROW(max_disjoint_paths(c, 0, 99, 1), UnknownComponent);
    EXPECT_THROW(max_disjoint_paths(c, 0, 8, 0), InvalidArgument);
    // Destinations do not reach sources.
    EXPECT_THROW(max_disjoint_paths(c, 8, 0, 1), NoPath);
}

TEST(MaxDisjointPaths, Deterministic)
{
    const Circuit c = generate_replicated(generate_omega(8), 3);
    EXPECT_EQ(max_disjoint_paths(c, 2, 45, 3), max_disjoint_paths(c, 2, 45, 3));
}

TEST(MaxDisjointPaths, MatchesBruteForceOnSmallRandomCircuits)
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> size(3, 9);
    for (int trial = 0; trial < 60; ++trial) {
        const Circuit c = random_dag(rng, size(rng));
        const ComponentId dest = c.component_count() - 1;
        const auto expected = brute_force_max_disjoint(enumerate_paths(c, 0, dest));
        if (expected == 0) {
            EXPECT_THROW(max_disjoint_paths(c, 0, dest, 10), NoPath);
            continue;
        }
        const auto r = max_disjoint_paths(c, 0, dest, 10);
        EXPECT_EQ(r.disjointness, expected) << "trial " << trial;
        std::vector<PathSpec> specs;
        for (const auto& w : r.wires)
            specs.push_back(PathSpec::from_wires(w));
        EXPECT_TRUE(are_disjoint(c, specs).disjoint);
    }
}
