#include <gtest/gtest.h>

#include "gsft/io.hpp"

using namespace gsft;
using io::json;

namespace {

const char* cyclic4_job = R"J({
  "command": "reduce",
  "input": {
    "matrix": [[1,0,1,0,1,0],[0,1,0,1,0,1],[1,1,1,0,0,0],[1,1,0,1,0,0],[1,1,0,0,1,0],[1,1,0,0,0,1]],
    "action": {"generators": ["(1 2)(3 4 5 6)"]}
  }
})J";

std::string with_command(const std::string& command) {
    auto doc = json::parse(cyclic4_job);
    doc["command"] = command;
    return doc.dump();
}

std::string error_of(const std::string& text) {
    try {
        io::run_job(io::parse_job(text));
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(ParseJob, MinimalReduceJob) {
    auto j = io::parse_job(cyclic4_job);
    EXPECT_EQ(j.command, "reduce");
    ASSERT_TRUE(j.matrix.has_value());
    EXPECT_EQ(j.matrix->dim(), 6u);
    ASSERT_TRUE(j.action.has_value());
    EXPECT_EQ(j.action->front(), (Permutation{1, 0, 3, 4, 5, 2}));
}

TEST(ParseJob, Diagnostics) {
    EXPECT_EQ(error_of(""), "$: missing command");
    EXPECT_EQ(error_of("{}"), "$: missing command");
    EXPECT_EQ(error_of(R"J({"command":"reduce","input":{"matrix":[[1,-1],[1,1]],"action":{"generators":[]}}})J"),
              "$.input.matrix[0][1]: negative entry -1");
    EXPECT_EQ(error_of(R"J({"command":"frobnicate"})J"), "$.command: unknown command \"frobnicate\"");
    EXPECT_EQ(error_of(R"J({"command":"reduce","input":{"matrix":[[1,1],[1]],"action":{"generators":[]}}})J"),
              "$.input.matrix[1]: row has 1 entries, expected 2");
    EXPECT_EQ(error_of(R"J({"command":"reduce","input":{"matrix":[[1,1],[1,1]]}})J"), "$.input: missing \"action\"");
    EXPECT_EQ(error_of(R"J({"command":"reduce","input":{"matrix":[[1,1],[1,1]],"action":{"generators":["(1 3)"]}}})J"),
              "$.input.action.generators[0]: bad cycle notation '(1 3)': point 3 outside 1..2");
    EXPECT_EQ(error_of(R"J({"command":"reduce","colour":1})J"), "$: unknown key \"colour\"");
    EXPECT_EQ(error_of(R"J({"command":"reduce","format":"gsft-job/9"})J"),
              "$.format: unsupported format \"gsft-job/9\" (expected \"gsft-job/1\")");
    EXPECT_EQ(error_of(R"J({"command":"bundle-counts","input":{"hnn":{"preset":"unknot"},"group":{"builtin":"Z2"}}})J"),
              "$.input.hnn.preset: unknown preset 'unknot' (use trefoil or figure8)");
    EXPECT_NE(error_of("{").find("malformed JSON"), std::string::npos);
}

TEST(ParseJob, ErrorClasses) {
    auto j = io::parse_job(R"J({"command":"reduce","input":{"matrix":[[1,1],[1,0]],"action":{"generators":["(1 2)"]}}})J");
    EXPECT_THROW(io::run_job(j), PreconditionError);
    auto capped = io::parse_job(with_command("quotient-counts"));
    capped.params["cap"] = 10;
    EXPECT_THROW(io::run_job(capped), CapExceeded);
}

TEST(ParseJob, BigIntegersAsStrings) {
    auto j = io::parse_job(R"J({"command":"invariants","input":{"matrix":[["123456789012345678901234567890"]]}})J");
    EXPECT_EQ((*j.matrix)(0, 0), parse_bigint("123456789012345678901234567890"));
    auto out = io::job_to_json(j);
    EXPECT_EQ(out["input"]["matrix"][0][0], "123456789012345678901234567890");
}

TEST(RoundTrip, CanonicalJobIsStable) {
    const std::vector<std::string> texts{
        cyclic4_job,
        R"J({"command":"verify-sse","input":{"certificates":[{"a":[[1,1],[1,1]],"b":[[2]],"r":[[1],[1]],"s":[[1,1]]}]}})J",
        R"J({"command":"split","input":{"matrix":[[1,1,1],[1,1,0],[1,0,1]],"labels":["x","y","z"],"action":{"generators":["(2 3)"]},
            "split":{"direction":"in","blocks":[[[1],[2,3]],[[1],[2]],[[1],[3]]]}},"params":{"max_n":3}})J",
        R"J({"command":"tqft","input":{"hnn":{"b_gens":2,"u_gens":["a","b"],"v_gens":["a","b"],"amalgamating_images":["b","Ab"]},
            "group":{"table":{"names":["e","x"],"rows":[[0,1],[1,0]]}}}})J",
        R"J({"command":"repshift","input":{"hnn":{"preset":"figure8"},"group":{"generators":{"degree":3,"perms":["(1 2)","(1 2 3)"]}}}})J",
        R"J({"command":"transport","input":{"certificate":{"a":[[1,1],[1,1]],"b":[[1,1],[1,1]],"r":[[1,0],[0,1]],"s":[[1,1],[1,1]]},
            "action":{"generators":["(1 2)"]},"target_action":{"generators":["(1 2)"]}}})J"};
    for (const auto& t : texts) {
        auto j = io::parse_job(t);
        auto canonical = io::job_to_json(j).dump();
        auto again = io::parse_job(canonical);
        EXPECT_TRUE(again == j) << t;
        EXPECT_EQ(io::job_to_json(again).dump(), canonical);
    }
}

TEST(RunJob, ReduceReportsBothMatrices) {
    auto r = io::run_job(io::parse_job(cyclic4_job));
    EXPECT_EQ(r.result["right"]["matrix"], json::parse("[[1,2],[2,1]]"));
    EXPECT_EQ(r.result["left"]["matrix"], json::parse("[[1,1],[4,1]]"));
    EXPECT_EQ(r.result["orbits"], json::parse("[[1,2],[3,4,5,6]]"));
    EXPECT_EQ(r.result["transpose_duality"], true);
}

TEST(RunJob, ClassifySwappedTwoShift) {
    auto r = io::run_job(io::parse_job(R"J({"command":"classify","input":{"matrix":[[1,1],[1,1]],"action":{"generators":["(1 2)"]}}})J"));
    EXPECT_EQ(r.result["verdict"], "constant-to-one");
    auto n = io::run_job(io::parse_job(with_command("classify")));
    EXPECT_EQ(n.result["verdict"], "nonexpansive");
    EXPECT_EQ(n.result["element"], "(3 5)(4 6)");
}

TEST(RunJob, BundleCountsForTrefoil) {
    auto r = io::run_job(io::parse_job(
        R"J({"command":"bundle-counts","input":{"hnn":{"preset":"trefoil"},"group":{"builtin":"Z2"}},"params":{"m":6}})J"));
    EXPECT_EQ(r.result["counts"], json::parse("[1,1,4,1,1,4]"));
    EXPECT_EQ(r.result["recurrence_holds"], true);
}

TEST(RunJob, EveryCommandRuns) {
    const std::map<std::string, std::string> jobs{
        {"invariants", with_command("invariants")},
        {"witness", with_command("witness")},
        {"burnside", with_command("burnside")},
        {"quotient-counts", with_command("quotient-counts")},
        {"split", R"J({"command":"split","input":{"matrix":[[1,1],[1,1]],"action":{"generators":["(1 2)"]},
                     "split":{"direction":"out","blocks":[[[1],[2]],[[1],[2]]]}}})J"},
        {"transport", R"J({"command":"transport","input":{"certificate":{"a":[[1,1],[1,1]],"b":[[1,1],[1,1]],"r":[[1,0],[0,1]],"s":[[1,1],[1,1]]},
                         "action":{"generators":["(1 2)"]},"target_action":{"generators":["(1 2)"]}}})J"},
        {"verify-sse", R"J({"command":"verify-sse","input":{"certificate":{"a":[[1,1],[1,1]],"b":[[2]],"r":[[1],[1]],"s":[[1,1]]}}})J"},
        {"repshift", R"J({"command":"repshift","input":{"hnn":{"preset":"trefoil"},"group":{"builtin":"S3"}}})J"},
        {"tqft", R"J({"command":"tqft","input":{"hnn":{"preset":"trefoil"},"group":{"builtin":"S3"}}})J"}};
    for (const auto& [command, text] : jobs) {
        auto r = io::run_job(io::parse_job(text));
        EXPECT_EQ(r.command, command);
        EXPECT_FALSE(r.result.empty()) << command;
    }
    auto q = io::run_job(io::parse_job(jobs.at("quotient-counts")));
    EXPECT_EQ(q.result["agree"], true);
    auto t = io::run_job(io::parse_job(jobs.at("transport")));
    EXPECT_EQ(t.result["certificate"]["a"], json::parse("[[2]]"));
    EXPECT_EQ(t.result["verified"], true);
}

TEST(EmitReport, DeterministicAndReparsable) {
    auto r = io::run_job(io::parse_job(with_command("invariants")));
    auto first = io::emit_report(r, "json");
    EXPECT_EQ(first, io::emit_report(io::run_job(io::parse_job(with_command("invariants"))), "json"));
    auto reparsed = json::parse(first);
    EXPECT_EQ(reparsed["result"], r.result);
    EXPECT_EQ(reparsed["format"], "gsft-report/1");
    EXPECT_EQ(reparsed["version"], io::version);
    // the echoed input is itself a valid job
    auto echo = io::parse_job_json(reparsed["input"]);
    EXPECT_EQ(io::job_to_json(echo), r.echo);
    EXPECT_EQ(io::emit_report(r, "text"), io::emit_report(r, "text"));
    EXPECT_THROW(io::emit_report(r, "yaml"), InputError);
}

TEST(EmitReport, TextLayout) {
    auto r = io::run_job(io::parse_job(with_command("invariants")));
    auto text = io::emit_report(r, "text");
    EXPECT_NE(text.find("BF group: Z/2 + Z/2"), std::string::npos) << text;
    EXPECT_NE(text.find("BF group: Z/4"), std::string::npos) << text;
    io::Report wide{"reduce", {{"matrix", json::parse("[[1,10],[100,2]]")}}, json::object()};
    EXPECT_EQ(io::emit_report(wide, "text"), "command: reduce\nmatrix:\n    1  10\n  100   2\n");
    EXPECT_EQ(io::format_bowen_franks(AbelianGroupInvariants{{2, 2}, 0}), "BF group: Z/2 + Z/2");
}
