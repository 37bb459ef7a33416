#include <gtest/gtest.h>

#include "growthkit/config.hpp"
#include "growthkit/report_io.hpp"

using namespace growthkit;

namespace {

const char* kSubdirect = R"(# phi x Sym(3)
kind = subdirect
phi = 1, 0
degree = 3
perm.a = 2,3,1
perm.b = 2,1,3   # transposition
max_len = 8
)";

}  // namespace

TEST(Config, ParsesAndBuildsSubdirect) {
  const auto c = ExperimentConfig::parse(kSubdirect);
  EXPECT_EQ(c.get("phi"), "1,0");
  EXPECT_EQ(c.get_int("max_len"), 8);
  EXPECT_EQ(c.get_list("perm.a"), (std::vector<std::int64_t>{2, 3, 1}));
  const auto o = build_oracle(c);
  EXPECT_EQ(o.kind(), OracleKind::subdirect_phi_finite);
  EXPECT_EQ(o.rank(), 2);
  EXPECT_EQ(config_phi(c)->C(), 1);
}

TEST(Config, DumpIsCanonicalAndRoundTrips) {
  const auto c = ExperimentConfig::parse(kSubdirect);
  const std::string d = c.dump();
  EXPECT_EQ(d, "degree=3\nkind=subdirect\nmax_len=8\nperm.a=2,3,1\nperm.b=2,1,3\nphi=1,0\n");
  EXPECT_EQ(ExperimentConfig::parse(d).dump(), d);
}

TEST(Config, SetOverridesAndRejectsUnknownKeys) {
  auto c = ExperimentConfig::parse(kSubdirect);
  c.set("max_len", " 12 ");
  EXPECT_EQ(c.get_int("max_len"), 12);
  EXPECT_THROW(c.set("colour", "blue"), config_error);
  EXPECT_THROW(ExperimentConfig::parse("bogus=1\n"), config_error);
  EXPECT_THROW(ExperimentConfig::parse("kind\n"), config_error);
}

TEST(Config, TypeErrors) {
  const auto c = ExperimentConfig::parse("kind=free_abelian\nm=two\n");
  EXPECT_THROW(c.get_int("m"), config_error);
  EXPECT_THROW(build_oracle(c), config_error);
  EXPECT_THROW(c.get_list("phi"), config_error);
  EXPECT_FALSE(c.get_int("seed").has_value());
}

TEST(Config, BuildsEveryKind) {
  EXPECT_EQ(build_oracle(ExperimentConfig::parse("kind=free_abelian\nm=3\n")).rank(), 3);
  EXPECT_EQ(build_oracle(ExperimentConfig::parse("kind=nilpotent_class2\nm=2\n")).kind(), OracleKind::nilpotent_class2);
  const auto perm = build_oracle(ExperimentConfig::parse("kind=finite_perm\ndegree=2\nperm.a=2,1\n"));
  EXPECT_EQ(perm.rank(), 1);
  const auto prod = build_oracle(ExperimentConfig::parse(
      "kind=direct_product\nleft.kind=free_abelian\nleft.m=2\nright.kind=finite_perm\nright.degree=2\n"
      "right.perm.a=2,1\nright.perm.b=1,2\n"));
  EXPECT_EQ(prod.kind(), OracleKind::direct_product);
  EXPECT_EQ(prod.width(), 16u + 2u);
}

TEST(Config, InvalidOraclesBecomeConfigErrors) {
  EXPECT_THROW(build_oracle(ExperimentConfig::parse("m=2\n")), config_error);
  EXPECT_THROW(build_oracle(ExperimentConfig::parse("kind=circle\n")), config_error);
  EXPECT_THROW(build_oracle(ExperimentConfig::parse("kind=subdirect\nphi=2,4\ndegree=2\nperm.a=2,1\nperm.b=1,2\n")),
               config_error);
  EXPECT_THROW(build_oracle(ExperimentConfig::parse("kind=finite_perm\ndegree=2\nperm.a=1,1\n")), config_error);
  EXPECT_THROW(build_oracle(ExperimentConfig::parse("kind=finite_perm\nm=1\ndegree=2\nperm.a=2,1\nperm.c=2,1\n")),
               config_error);
  EXPECT_THROW(build_oracle(ExperimentConfig::parse("kind=subdirect\nphi=1,0\nm=3\ndegree=2\nperm.a=2,1\nperm.b=1,2\n")),
               config_error);
  EXPECT_THROW(ExperimentConfig::load("/nonexistent/growthkit.cfg"), config_error);
}

TEST(ReportIo, GrowthCsvAndJson) {
  GrowthReport r;
  r.n_max = 2;
  r.achieved = 2;
  r.sphere = {1, 4, 8};
  r.ball = {1, 5, 13};
  EXPECT_EQ(growth_to_csv(r), "n,sphere,ball,rate_root,rate_ratio\n0,1,1,,4\n1,4,5,5,2\n2,8,13,3.605551275,\n");
  const Json j = growth_to_json(r);
  EXPECT_EQ(j["ball_sizes"], Json({1, 5, 13}));
  EXPECT_TRUE(j["rate_root"][0].is_null());
  EXPECT_EQ(j["rate_ratio"][1], 2.0);
}

TEST(ReportIo, RhoText) {
  EXPECT_EQ(rho_to_text(RhoResult{RhoNotFound{9}}), "rho>9 not_found max_len=9\n");
  const Json j = rho_to_json(RhoResult{RhoNotFound{9}});
  EXPECT_EQ(j["rho_at_least"], 10);
  EXPECT_FALSE(j["found"].get<bool>());
}

TEST(ReportIo, BoundJson) {
  const Json j = bound_to_json(make_bound_report(2, 1, 4));
  EXPECT_TRUE(j["vacuous"].get<bool>());
  EXPECT_TRUE(j["k_used"].is_null());
  EXPECT_EQ(j.dump(), R"({"m":2,"C":1,"rho":4,"k_used":null,"lemma2_ok":false,"thm1_ok":false,)"
                      R"("lower_bound":null,"dk_bound":null,"chain_k":1,"vacuous":true})");
}
