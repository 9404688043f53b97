// Copyright 2026 The catbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "catbox/protocol.hpp"
#include "catbox/scenarios.hpp"
#include "support/support.hpp"

namespace catbox::protocol {
namespace {

constexpr const char* kGarching =
    "SPACE atom levels=e,g,a\n"
    "SPACE field fock=12\n"
    "INIT atom=e field=vac\n"
    "JC g=1 t=0.7853981633974483\n"
    "ERASE atom\n"
    "DETECT atom\n"
    "TRACE keep=field\n"
    "REPORT coherence=0,1\n";

bool mentions(const std::vector<Diagnostic>& ds, int line, const std::string& fragment) {
  for (const auto& d : ds) {
    if (d.line == line && d.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

TEST(Parse, ErasureScript) {
  const auto r = parse(kGarching);
  ASSERT_TRUE(r.ok()) << to_string(r.diagnostics.at(0));
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_EQ(r.protocol->instructions.size(), 8u);
  const auto& jc = std::get<JcOp>(r.protocol->instructions[3].op);
  EXPECT_EQ(jc.atom, "atom");
  EXPECT_EQ(jc.field, "field");
  EXPECT_EQ(r.protocol->instructions[3].line, 4);
}

TEST(Parse, EmptyAndCommentOnly) {
  for (const char* src : {"", "\n\n", "# only a comment\n", "   \t\n"}) {
    const auto r = parse(src);
    ASSERT_TRUE(r.ok());
    EXPECT_TRUE(r.protocol->instructions.empty());
  }
}

TEST(Parse, MissingArgument) {
  const auto r = parse("JC g=1");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r.diagnostics, 1, "missing argument t"));
}

TEST(Parse, MetadataAndVersion) {
  const auto r = parse("# name: demo\n# description: a test\nVERSION 1\nSPACE a levels=e,g\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.protocol->name, "demo");
  EXPECT_EQ(r.protocol->description, "a test");
  EXPECT_EQ(r.protocol->version, 1);
}

TEST(Parse, KetSpellings) {
  const auto r = parse(
      "SPACE a levels=e,g\nSPACE b levels=e,g\nSPACE c levels=e,g\nSPACE f fock=4\n"
      "INIT a=|e> b=|g\xE2\x9F\xA9 c=amps:0.6;0.8i f=fock:2\n");
  ASSERT_TRUE(r.ok()) << to_string(r.diagnostics.at(0));
  const auto& init = std::get<InitOp>(r.protocol->instructions.back().op);
  EXPECT_EQ(std::get<LevelKet>(init.kets[0].second).level, "e");
  EXPECT_EQ(std::get<LevelKet>(init.kets[1].second).level, "g");
  EXPECT_EQ(std::get<AmplitudeKet>(init.kets[2].second).amplitudes[1], cplx(0, 0.8));
  EXPECT_EQ(std::get<FockKet>(init.kets[3].second).n, 2u);
}

TEST(Parse, MalformedCorpus) {
  const auto& corpus = testsupport::malformed_corpus();
  ASSERT_GE(corpus.size(), 20u);
  for (const auto& m : corpus) {
    const auto r = parse(m.text);
    EXPECT_FALSE(r.ok()) << m.name;
    ASSERT_FALSE(r.diagnostics.empty()) << m.name;
    EXPECT_EQ(r.diagnostics.front().line, m.line) << m.name << ": "
                                                  << to_string(r.diagnostics.front());
    EXPECT_TRUE(mentions(r.diagnostics, m.line, m.fragment))
        << m.name << ": " << to_string(r.diagnostics.front());
    for (const auto& d : r.diagnostics) {
      EXPECT_GE(d.line, 1) << m.name;
      EXPECT_GE(d.column, 1) << m.name;
    }
  }
}

TEST(Parse, CollectsEveryBadLine) {
  const auto r = parse("BOGUS\nSPACE a levels=e,g\nALSO_BOGUS\n");
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].line, 1);
  EXPECT_EQ(r.diagnostics[1].line, 3);
}

TEST(Parse, ColumnsPointAtTokens) {
  const auto r = parse("SPACE a levels=e,g\nINIT a=e\nPULSE   zz\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].column, 9);
}

TEST(Parse, NeverThrowsOnNoise) {
  std::mt19937_64 rng(51);
  const std::string alphabet = "SPACEINITJCREPORT =,.:;|<>#\n\t-+0123456789eiagfockvlsx\xE2\x9F\xA9";
  for (int k = 0; k < 2000; ++k) {
    std::string s;
    const auto len = rng() % 120;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
    ParseResult r;
    EXPECT_NO_THROW(r = parse(s));
    EXPECT_TRUE(r.ok() == r.diagnostics.empty());
  }
}

TEST(Parse, MutatedScriptsNeverThrow) {
  std::mt19937_64 rng(52);
  const std::string base = scenarios::script_twin("paris", {});
  for (int k = 0; k < 500; ++k) {
    std::string s = base;
    for (int m = 0; m < 3; ++m) {
      const auto at = rng() % s.size();
      switch (rng() % 3) {
        case 0: s.erase(at, 1 + rng() % 5); break;
        case 1: s.insert(at, 1, static_cast<char>(32 + rng() % 95)); break;
        default: s[at] = static_cast<char>(rng() % 256); break;
      }
      if (s.empty()) s = "X";
    }
    EXPECT_NO_THROW(parse(s));
  }
}

TEST(Numbers, ComplexLiterals) {
  EXPECT_EQ(parse_complex("2"), cplx(2, 0));
  EXPECT_EQ(parse_complex("0.5-1i"), cplx(0.5, -1));
  EXPECT_EQ(parse_complex("3i"), cplx(0, 3));
  EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
  EXPECT_EQ(parse_complex("1e-3+2e+1i"), cplx(1e-3, 20));
  EXPECT_EQ(parse_complex("+1+i"), cplx(1, 1));
  for (const char* bad : {"", "i2", "1+", "1..2", "nan", "inf", "1+2j", "2,0"}) {
    EXPECT_FALSE(parse_complex(bad).has_value()) << bad;
  }
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 0.7853981633974483, 3.141592653589793}) {
    EXPECT_EQ(parse_real(format_real(v)), v);
  }
  EXPECT_EQ(format_complex(cplx(2, 0)), "2+0i");
  EXPECT_EQ(format_complex(cplx(0.5, -1)), "0.5-1i");
  EXPECT_EQ(parse_complex(format_complex(cplx(-0.0, -0.0))), cplx(0, 0));
}

class Twin : public ::testing::TestWithParam<std::string> {};

std::vector<scenarios::Parameters> parameter_sets() {
  std::vector<scenarios::Parameters> out(1);
  scenarios::Parameters p;
  p.alpha = cplx(1.2, -0.7);
  p.t = 5000;
  p.lambda = 1e-4;
  p.g = 0.8;
  p.t_prime = 1.1;
  p.coeffs = {0.6, cplx(0, 0.8)};
  out.push_back(p);
  p.fock_dim = 40;
  p.coeffs = {};
  p.dim = 5;
  p.with_r2 = false;
  p.with_detection = true;
  out.push_back(p);
  return out;
}

TEST_P(Twin, ReproducesNativeReport) {
  for (const auto& p : parameter_sets()) {
    const auto script = scenarios::script_twin(GetParam(), p);
    const auto parsed = parse(script);
    ASSERT_TRUE(parsed.ok()) << script << to_string(parsed.diagnostics.at(0));
    const auto diff = compare_reports(interpret(*parsed.protocol),
                                      scenarios::run_native(GetParam(), p), 1e-12);
    EXPECT_FALSE(diff.has_value()) << *diff << "\n" << script;
  }
}

TEST_P(Twin, RoundTripIsIdempotent) {
  const auto first = parse(scenarios::script_twin(GetParam(), {}));
  ASSERT_TRUE(first.ok());
  const auto text = unparse(*first.protocol);
  const auto second = parse(text);
  ASSERT_TRUE(second.ok()) << text;
  EXPECT_EQ(*first.protocol, *second.protocol);
  EXPECT_EQ(unparse(*second.protocol), text);
}

INSTANTIATE_TEST_SUITE_P(AllScenarios, Twin,
                         ::testing::Values("cat", "paris", "paris-modified", "garching",
                                           "garching-noerase", "vonneumann"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST_P(Twin, ShippedScriptMatches) {
  std::ifstream in(std::string(CATBOX_SCRIPTS_DIR) + "/" + GetParam() + ".qproto");
  ASSERT_TRUE(in) << GetParam();
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), scenarios::script_twin(GetParam(), {}));
}

TEST(Interpret, ErasureScriptGivesHalfCoherence) {
  const auto rows = interpret(*parse(kGarching).protocol);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].branch, "atom=a");
  EXPECT_NEAR(rows[0].probability, 1.0, 1e-12);
  EXPECT_NEAR(rows[0].scalar("coherence_0_1"), 0.5, 1e-12);
}

TEST(Interpret, TraceOfProductIsFactor) {
  const auto rows = interpret(*parse(
      "SPACE s levels=x,y\nSPACE t levels=u,v,w\nINIT s=amps:0.6;0.8i t=v\n"
      "TRACE keep=s\nREPORT populations coherence=0,1 purity\n").protocol);
  EXPECT_NEAR(rows[0].scalar("pop_x"), 0.36, 1e-15);
  EXPECT_NEAR(rows[0].scalar("coherence_0_1"), 0.48, 1e-15);
  EXPECT_NEAR(rows[0].scalar("purity"), 1.0, 1e-15);
}

TEST(Interpret, JointViewNames) {
  const auto rows = interpret(*parse(
      "SPACE s levels=x,y\nSPACE t levels=u,v\nINIT s=x t=v\nTRACE keep=t,s\n"
      "REPORT populations dump\n").protocol);
  EXPECT_NEAR(rows[0].scalar("pop_x.v"), 1.0, 1e-15);
  EXPECT_EQ(rows[0].matrices.at(0).name, "rho_s_t");
}

TEST(Interpret, BranchMassSumsToOne) {
  const auto rows = interpret(*parse(scenarios::script_twin("paris", {})).protocol);
  std::map<std::string, double> mass;
  for (const auto& r : rows) {
    if (r.branch != "summary") mass[r.stage] += r.probability;
  }
  for (const auto& [stage, m] : mass) EXPECT_NEAR(m, 1.0, 1e-10) << stage;
}

TEST(Interpret, RuntimeErrorsCarryLine) {
  const auto run = [](const char* src) -> int {
    try {
      interpret(*parse(src).protocol);
    } catch (const RuntimeError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(run("SPACE f fock=3\nINIT f=coherent:2\n"), 2);
  EXPECT_EQ(run("SPACE atom levels=e,g,a\nSPACE f fock=3\nINIT atom=e f=vac\nERASE atom\n"
                "JC g=1 t=1\n"),
            5);
  EXPECT_EQ(run("SPACE a levels=e,g\nINIT a=e\nTRACE keep=a\nREPORT coherence=0,5\n"), 4);
  EXPECT_EQ(run("SPACE a levels=e,g\nSPACE b levels=e,g\nINIT a=e b=e\nDETECT a\n"
                "REPORT correlation=a,b\n"),
            5);
}

TEST(Interpret, SamplingIsSeededAndKeepsOneBranch) {
  const auto proto = *parse(scenarios::script_twin("paris", {})).protocol;
  const auto a = interpret(proto, {7});
  const auto b = interpret(proto, {7});
  EXPECT_FALSE(compare_reports(a, b, 0.0).has_value());
  for (const auto& r : a) {
    if (r.stage == "probe") {
      EXPECT_EQ(r.outcomes.size(), 2u);
    }
  }
  // Full protocol: the two atoms always agree.
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rows = interpret(proto, {seed});
    agree += rows.back().scalar("correlation_signal") > 0;
  }
  EXPECT_EQ(agree, 200);
}

TEST(Interpret, SampledFrequenciesFollowProbabilities) {
  const auto proto = *parse(
      "SPACE a levels=e,g\nINIT a=amps:0.6;0.8\nDETECT a\nREPORT stage=s marginal=a\n").protocol;
  int g = 0;
  const int n = 4000;
  for (int seed = 0; seed < n; ++seed) {
    g += interpret(proto, {static_cast<std::uint64_t>(seed)}).back().scalar("p_a_g") > 0;
  }
  EXPECT_NEAR(static_cast<double>(g) / n, 0.64, 0.03);
}

}  // namespace
}  // namespace catbox::protocol
