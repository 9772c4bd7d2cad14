#include "katz/corpus.hpp"
#include "katz/error.hpp"
#include "katz/io.hpp"
#include "support/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace katz;

namespace {

std::string parse_error(const std::string& text) {
    try {
        parse_datum(text);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        return e.what();
    }
    FAIL("parsed");
    return {};
}

// 1-based line and column of the first occurrence of needle
std::pair<long, long> locate(const std::string& text, const std::string& needle) {
    std::size_t at = text.find(needle);
    REQUIRE(at != std::string::npos);
    long line = 1 + static_cast<long>(std::count(text.begin(), text.begin() + static_cast<long>(at), '\n'));
    std::size_t start = text.rfind('\n', at);
    long column = static_cast<long>(at - (start == std::string::npos ? 0 : start + 1)) + 1;
    return {line, column};
}

}  // namespace

TEST_CASE("corpus print/parse round trip") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        FormalTypeDatum d = corpus_entry(name).datum.normalized();
        std::string text = print_datum(d, name);
        NamedDatum back = parse_named_datum(text);
        CHECK(back.datum == d);
        CHECK(back.name == name);
        CHECK(print_datum(back.datum, name) == text);
    }
}

TEST_CASE("random print/parse round trip") {
    katz::testing::Gen g(81);
    katz::testing::Gen::Shape s;
    for (int i = 0; i < 300; ++i) {
        FormalTypeDatum d = g.datum(s);
        std::string text = print_datum(d);
        CHECK(parse_datum(text) == d);
        CHECK(print_datum(parse_datum(text)) == text);
    }
}

TEST_CASE("parse errors carry a location") {
    std::string text = print_datum(corpus_entry("hypergeometric2").datum.normalized());
    std::string broken = text;
    broken.replace(broken.find("\"1/5\""), 5, "\"3/\"");
    auto [line, column] = locate(broken, "\"3/\"");
    std::string msg = parse_error(broken);
    CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("line " + std::to_string(line)));
    CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("column " + std::to_string(column)));
    CHECK_THAT(msg, Catch::Matchers::ContainsSubstring("/points/0"));

    std::string truncated = text.substr(0, text.size() / 2);
    CHECK_THAT(parse_error(truncated), Catch::Matchers::ContainsSubstring("line"));

    std::string no_rank = text;
    no_rank.replace(no_rank.find("\"rank\""), 6, "\"rnak\"");
    parse_error(no_rank);

    std::string zero_ram = text;
    zero_ram.replace(zero_ram.find("\"ram\": 1"), 8, "\"ram\": 0");
    parse_error(zero_ram);
}

TEST_CASE("operation descriptors round trip") {
    std::vector<Operation> ops;
    ops.push_back({Operation::Kind::Fourier, {}, {}, {}});
    ops.push_back({Operation::Kind::MiddleConvolution, {}, {}, Scalar(frac(2, 7))});
    ops.push_back({Operation::Kind::Moebius, {}, MoebiusMap::make(1, 2, 3, 4), {}});
    ops.push_back({Operation::Kind::Twist, corpus_entry("kummer").datum.normalized(), {}, {}});
    for (const auto& op : ops) {
        Operation back = parse_operation(operation_to_json(op).dump());
        CHECK(back.kind == op.kind);
        CHECK(operation_to_json(back) == operation_to_json(op));
    }
    FormalTypeDatum d = corpus_entry("hypergeometric2").datum.normalized();
    auto mc = apply_operation(d, ops[1]);
    REQUIRE(std::holds_alternative<FormalTypeDatum>(mc));
    CHECK(std::get<FormalTypeDatum>(mc) == std::get<FormalTypeDatum>(middle_convolution(d, Scalar(frac(2, 7)))));
    CHECK_THROWS_AS(parse_operation("{\"op\": \"spin\"}"), Error);
}

TEST_CASE("step operations reproduce the step") {
    for (const auto& name : {"hypergeometric2", "kloosterman", "airy", "hypergeometric3"}) {
        INFO(name);
        Verdict v = solve_ds(corpus_entry(name).datum);
        REQUIRE(v.kind == Verdict::Kind::Solvable);
        FormalTypeDatum cur = v.trace.initial;
        for (const auto& step : v.trace.steps) {
            auto direct = apply_step(cur, step);
            REQUIRE(std::holds_alternative<FormalTypeDatum>(direct));
            for (const auto& op : step_operations(step)) {
                auto r = apply_operation(cur, op);
                REQUIRE(std::holds_alternative<FormalTypeDatum>(r));
                cur = std::get<FormalTypeDatum>(r).normalized();
            }
            CHECK(cur == std::get<FormalTypeDatum>(direct).normalized());
        }
        CHECK(cur == v.trace.terminal);
    }
}

TEST_CASE("trace round trip") {
    for (const auto& name : corpus_names()) {
        INFO(name);
        Verdict v = reduce(corpus_entry(name).datum.normalized());
        if (v.kind != Verdict::Kind::Solvable) continue;
        std::string text = print_trace(v.trace);
        OperationTrace back = parse_trace(text);
        CHECK(back.initial == v.trace.initial);
        CHECK(back.terminal == v.trace.terminal);
        CHECK(back.steps.size() == v.trace.steps.size());
        CHECK(print_trace(back) == text);
        CHECK(replay(back, ReplayDirection::Backward) == v.trace.initial);
    }
}

TEST_CASE("verdict json") {
    Verdict v = solve_ds(corpus_entry("rig4").datum);
    json j = verdict_to_json(v);
    CHECK(j.dump().find("RigExceedsTwo") != std::string::npos);
}
