#include <gtest/gtest.h>

#include <sstream>

#include "supco/effective.hpp"
#include "supco/io/builtin.hpp"
#include "supco/io/config.hpp"
#include "supco/io/emit.hpp"

using namespace supco;

namespace {

std::string error_of(const std::string& text) {
    try {
        io::parse_yaml(text, "cfg.yaml");
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConfigError);
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, BuiltinsParse) {
    for (const auto& [name, text] : io::builtin_configs()) {
        const auto cfg = io::parse_yaml(text, name);
        EXPECT_NO_THROW(io::check_circuit(cfg.circuit, name + ": ")) << name;
    }
    EXPECT_THROW(io::builtin_config("nope"), Error);
}

TEST(Config, UnknownKeysReportLocation) {
    const std::string e = error_of("task: kerrcat\ncircuit:\n  family: SnailArray\n  M: 1\n  Mx: 2\n");
    EXPECT_NE(e.find("cfg.yaml:5:3"), std::string::npos) << e;
    EXPECT_NE(e.find("circuit.Mx"), std::string::npos) << e;
    EXPECT_NE(error_of("task: sc\nnumerics:\n  S_maxx: 3\n").find("cfg.yaml:3:3"), std::string::npos);
    EXPECT_NE(error_of("bogus: 1\n").find("unknown section"), std::string::npos);
    EXPECT_NE(error_of("task: fly\n").find("unknown task"), std::string::npos);
    EXPECT_NE(error_of("schema: other/v2\n").find("schema"), std::string::npos);
}

TEST(Config, SyntaxErrorsReportLine) {
    const std::string e = error_of("task: sc\ncircuit:\n  family: [SnailArray\n");
    EXPECT_NE(e.find("cfg.yaml:"), std::string::npos) << e;
}

TEST(Config, SweepSection) {
    const auto cfg = io::parse_yaml(io::builtin_config("sweep-kerr-cat"));
    ASSERT_EQ(cfg.axes.size(), 2u);
    EXPECT_EQ(cfg.axes[1].values.size(), 401u);
    EXPECT_DOUBLE_EQ(cfg.axes[1].values.back(), 0.5);
    ASSERT_EQ(cfg.constraints.size(), 1u);
    EXPECT_EQ(cfg.constraints[0].op, Constraint::Op::Ge);
    EXPECT_EQ(cfg.sweep_target, "kerrcat");
    EXPECT_NE(error_of("sweep:\n  constraints:\n    - {quantity: K_MHz, op: \">\", value: 1}\n").find("op"), std::string::npos);
}

TEST(Config, JsonRoundTripReproducesResults) {
    const auto a = io::parse_yaml(io::builtin_config("kerr-cat-configD"));
    const auto text = io::to_json(a).dump();
    const auto b = io::parse_json(text);
    EXPECT_EQ(io::to_json(b).dump(), text);
    auto run = [](const io::RunConfig& c) {
        const auto def = build_circuit(c.circuit);
        const auto f = mode_frame(def.model, def.EC, 26);
        return kerr_cat(def.model, f, KerrCatDrive::fixed(0.5));
    };
    const auto ka = run(a), kb = run(b);
    EXPECT_EQ(ka.K, kb.K);
    EXPECT_EQ(ka.eps2, kb.eps2);
    const auto s = io::parse_json(io::to_json(io::parse_yaml(io::builtin_config("sweep-beam-splitter"))).dump());
    EXPECT_EQ(s.constraints.size(), 3u);
    EXPECT_EQ(s.sweep_target, "beamsplitter");
}

TEST(Config, CircuitValidation) {
    Params p{{"family", std::string("SnailArray")}, {"M", 1.0}, {"N", 3.0}, {"alpha", 0.1}, {"phi_e_flux", 0.3}, {"E_J_GHz", 50.0}};
    EXPECT_THROW(build_circuit(p), Error);  // no E_C
    p["E_C_GHz"] = 0.2;
    EXPECT_NO_THROW(build_circuit(p));
    p["C_pF"] = 0.1;
    EXPECT_THROW(build_circuit(p), Error);
    p.erase("C_pF");
    p["M"] = 1.5;
    EXPECT_THROW(build_circuit(p), Error);
}

TEST(Emit, NumbersAndCsv) {
    EXPECT_EQ(io::fmt_num(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(io::fmt_num(-0.0), "0");
    EXPECT_EQ(io::round12(2.0 / 3.0), 0.666666666667);
    std::ostringstream os;
    io::CsvWriter w(os, "demo/v1", {"a", "b"});
    w.row({1.5, std::string("x,\"y\"")});
    w.row({static_cast<long long>(3), std::string("plain")});
    EXPECT_EQ(os.str(), "# schema: demo/v1\na,b\n1.5,\"x,\"\"y\"\"\"\n3,plain\n");
}
