#include <vector>

#include "catch_amalgamated.hpp"
#include "dcrp/construct.hpp"

using namespace dcrp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const HeatingContext kCtx(1.4, 0.2);
const HeatingContext kCtxBig(1.4, 2.0);

PrimitiveState at_mach(double m, double gamma = 1.4) { return {1.0, m * std::sqrt(gamma), 1.0}; }

ErrorKind error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvariantViolation;
}

double state_diff(const PrimitiveState& a, const PrimitiveState& b) {
  const auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
  return std::max({rel(a.rho, b.rho), rel(a.u, b.u), rel(a.p, b.p)});
}

double fan_diff(const WaveFan& a, const WaveFan& b) {
  const double a1 = sound_speed(a.u1, a.gamma());
  double d = std::max({state_diff(a.u5, b.u5), state_diff(a.u6, b.u6), state_diff(a.u7, b.u7)});
  // region 4 only exists while the left shock moves upstream
  const double s_left = std::min(a.s_left.value_or(0.0), b.s_left.value_or(0.0));
  if (s_left < -1e-9 * a1) d = std::max(d, state_diff(a.pre_heating(), b.pre_heating()));
  d = std::max(d, std::abs(a.contact_speed - b.contact_speed) / a1);
  d = std::max(d, std::abs(a.s_right - b.s_right) / a1);
  d = std::max(d, std::abs(a.s_left.value_or(0.0) - b.s_left.value_or(0.0)) / a1);
  return d;
}

}  // namespace

TEST_CASE("coupling residual Y", "[construct]") {
  CHECK(std::abs(big_x(1.0620, m_star(kCtx), kCtx)) < 1e-3);
  CHECK(std::abs(big_y(1.0620, kCtx)) < 1e-3);
  CHECK(big_y(0.67612340378281326, kCtx) > 0.0);
  CHECK(big_y(1.5212776, kCtx) < 0.0);
  CHECK_THAT(big_y(0.8 / std::sqrt(1.4), kCtx), WithinRel(0.63318523443172738, 1e-10));
  CHECK_THAT(big_y(1.2 / std::sqrt(1.4), kCtx), WithinRel(0.078196907014791934, 1e-9));
  CHECK_THAT(big_y(1.8 / std::sqrt(1.4), kCtx), WithinRel(-0.72942741620356212, 1e-10));
  CHECK_THAT(big_y(2.8 / std::sqrt(1.4), kCtxBig), WithinRel(-1.0290985885946872, 1e-10));
  CHECK(error_of([] { big_y(0.5, kCtx); }) == ErrorKind::DomainViolation);
  CHECK(error_of([] { big_x(1.5, 0.7, kCtx); }) == ErrorKind::DomainViolation);  // M4 > M*
}

TEST_CASE("X increases with M4", "[construct][property]") {
  for (const auto& ctx : {kCtx, kCtxBig, HeatingContext(1.67, 0.5), HeatingContext(1.1, 0.05)}) {
    const double ms = m_star(ctx);
    for (double m1 : {0.3, 0.9, 1.5, 2.5}) {
      const double top = std::min(m1, ms);
      for (int i = 1; i < 100; ++i) {
        const double m4 = top * i / 100.0;
        const double h = 1e-7 * top;
        if (m4 + h > top) continue;
        CHECK((big_x(m1, m4 + h, ctx) - big_x(m1, m4 - h, ctx)) / (2.0 * h) > 0.0);
      }
    }
  }
}

TEST_CASE("Type1/Type2 demarcation", "[construct]") {
  const double r = y_root(kCtx);
  CHECK_THAT(r, WithinAbs(1.0620, 5e-4));
  CHECK_THAT(r, WithinRel(1.0623383032151669, 1e-12));
  CHECK_THAT(*m_star_star(kCtx) - r, WithinAbs(0.7510, 1e-3));

  const double r2 = y_root(kCtxBig);
  CHECK_THAT(r2, WithinRel(1.5372427360647357, 1e-10));
  CHECK(r2 > m_star(kCtxBig));
  CHECK(big_y(r2 * (1.0 - 1e-6), kCtxBig) > 0.0);
  CHECK(big_y(r2 * (1.0 + 1e-6), kCtxBig) < 0.0);
}

TEST_CASE("Table 1 classification", "[construct]") {
  CHECK(classify({1.0, 0.8, 1.0}, kCtx) == SolutionType::Type1);
  CHECK(classify({1.0, 1.2, 1.0}, kCtx) == SolutionType::Type1);
  CHECK(classify({1.0, 1.8, 1.0}, kCtx) == SolutionType::Type2);
  CHECK(classify({1.0, 2.8, 1.0}, kCtx) == SolutionType::Type3);
  CHECK(classify({1.0, 2.8, 1.0}, kCtxBig) == SolutionType::Type2);
}

TEST_CASE("classification depends on the Mach number only", "[construct][property]") {
  for (double u : {0.3, 0.8, 1.2, 1.8, 2.8, 4.0}) {
    const auto base = classify({1.0, u, 1.0}, kCtx);
    for (double lambda : {1e-3, 0.5, 2.0, 1e3}) {
      CHECK(classify({lambda, u, lambda}, kCtx) == base);
      // same Mach number at a different temperature
      CHECK(classify({1.0, u * std::sqrt(lambda), lambda}, kCtx) == base);
    }
  }
}

TEST_CASE("classification errors", "[construct]") {
  CHECK(error_of([] { classify({1.0, 0.0, 1.0}, kCtx); }) == ErrorKind::BackflowUnsupported);
  CHECK(error_of([] { classify({1.0, -1.0, 1.0}, kCtx); }) == ErrorKind::BackflowUnsupported);
  CHECK(error_of([] { solve(at_mach(1.0), kCtx); }) == ErrorKind::SonicUpstream);
  CHECK(error_of([] { classify({0.0, 1.0, 1.0}, kCtx); }) == ErrorKind::NonPhysical);
}

TEST_CASE("types are ordered in M1", "[construct][property]") {
  for (const auto& ctx : {kCtx, HeatingContext(1.67, 0.3), HeatingContext(1.2, 1.0)}) {
    const double r = y_root(ctx);
    const double mss = *m_star_star(ctx);
    std::vector<SolutionType> seq;
    std::vector<double> at;
    for (int i = 0; i <= 4000; ++i) {
      const double m = 0.05 + 4.0 * i / 4000.0;
      if (std::abs(m - 1.0) < 1e-6) continue;
      const auto t = classify(at_mach(m, ctx.gamma), ctx);
      if (seq.empty() || seq.back() != t) {
        seq.push_back(t);
        at.push_back(m);
      }
    }
    REQUIRE(seq == std::vector{SolutionType::Type1, SolutionType::Type2, SolutionType::Type3});
    CHECK_THAT(at[1], WithinAbs(r, 1.1e-3));
    CHECK_THAT(at[2], WithinAbs(mss, 1.1e-3));
  }
}

TEST_CASE("Type1 fans", "[construct]") {
  const auto t1 = construct_type1({1.0, 0.8, 1.0}, kCtx);
  REQUIRE(check_invariants(t1).ok());
  const double m4 = mach(*t1.u4, t1.gamma());
  const double m5 = mach(t1.u5, t1.gamma());
  CHECK(m4 < m5);
  CHECK(m5 < 1.0);
  CHECK(heating_residuals(*t1.u4, t1.u5, kCtx).worst() < 1e-10);
  CHECK(*t1.s_left < 0.0);

  const auto t2 = construct_type1({1.0, 1.2, 1.0}, kCtx);
  REQUIRE(check_invariants(t2).ok());
  CHECK(*t2.s_left < 0.0);

  // a Type2 problem has no Type1 root
  CHECK(error_of([] { construct_type1({1.0, 1.8, 1.0}, kCtx); }) == ErrorKind::StructureMismatch);
}

TEST_CASE("vanishing heat gives the trivial fan", "[construct]") {
  const HeatingContext tiny(1.4, 1e-12);
  for (double u : {0.5, 2.8}) {
    const PrimitiveState u1{1.0, u, 1.0};
    const auto fan = solve(u1, tiny);
    for (const auto& s : {fan.pre_heating(), fan.u5, fan.u6, fan.u7}) CHECK(state_diff(s, u1) < 1e-5);
  }
}

TEST_CASE("Type2 fans", "[construct]") {
  const auto t3 = construct_type2({1.0, 1.8, 1.0}, kCtx);
  REQUIRE(check_invariants(t3).ok());
  CHECK_THAT(mach(*t3.u4, t3.gamma()), WithinAbs(0.6136, 1e-4));
  CHECK_THAT(mach(t3.u5, t3.gamma()), WithinAbs(1.0, 1e-8));
  CHECK_THAT(*t3.raref_head, WithinAbs(0.0, 1e-8));

  const auto t5 = construct_type2({1.0, 2.8, 1.0}, kCtxBig);
  REQUIRE(check_invariants(t5).ok());
  CHECK_THAT(mach(*t5.u4, t5.gamma()), WithinAbs(0.29263, 1e-4));
  CHECK_THAT(k_max(mach(*t5.u4, t5.gamma()), t5.gamma()), WithinRel(2.0, 1e-10));

  // at M1 = M** the left shock is stationary
  const auto edge = construct_type2(at_mach(*m_star_star(kCtx)), kCtx);
  CHECK_THAT(*edge.s_left, WithinAbs(0.0, 1e-6));
}

TEST_CASE("Type3 fans", "[construct]") {
  const auto t4 = construct_type3({1.0, 2.8, 1.0}, kCtx);
  REQUIRE(check_invariants(t4).ok());
  CHECK_FALSE(t4.u4);
  CHECK(t4.pre_heating() == t4.u1);
  CHECK(heating_residuals(t4.u1, t4.u5, kCtx).worst() < 1e-10);
  const double m5 = mach(t4.u5, t4.gamma());
  CHECK(m5 >= 1.0);
  CHECK(m5 < mach(t4.u1, t4.gamma()));
  CHECK(*t4.raref_head > 0.0);

  const auto edge = construct_type3(at_mach(*m_star_star(kCtx)), kCtx);
  CHECK_THAT(mach(edge.u5, edge.gamma()), WithinAbs(1.0, 1e-8));
  CHECK(error_of([] { construct_type3({1.0, 0.8, 1.0}, kCtx); }) == ErrorKind::StructureMismatch);
}

TEST_CASE("constructions agree on the type boundaries", "[construct]") {
  const auto u_yr = at_mach(y_root(kCtx));
  const auto a = construct_type1(u_yr, kCtx);
  const auto b = construct_type2(u_yr, kCtx);
  CHECK(fan_diff(a, b) < 1e-6);
  CHECK_THAT(mach(*a.u4, a.gamma()), WithinAbs(m_star(kCtx), 1e-6));

  const auto u_mss = at_mach(*m_star_star(kCtx));
  const auto c = construct_type2(u_mss, kCtx);
  const auto d = construct_type3(u_mss, kCtx);
  CHECK(fan_diff(c, d) < 1e-6);
}

TEST_CASE("sampling", "[construct]") {
  const auto t1 = solve({1.0, 0.8, 1.0}, kCtx);
  CHECK(sample(t1, -1e6, 1.0) == t1.u1);
  CHECK(sample(t1, 1e6, 1.0) == t1.u1);
  CHECK(sample(t1, 0.5 * t1.contact_speed, 1.0) == t1.u5);
  CHECK(sample(t1, -1e-12, 1.0) == *t1.u4);
  CHECK_THROWS_AS(sample(t1, 0.0, 0.0), Error);

  const auto t3 = solve({1.0, 1.8, 1.0}, kCtx);
  CHECK(state_diff(sample(t3, *t3.raref_tail, 1.0), t3.u6) < 1e-10);
  const auto t4 = solve({1.0, 2.8, 1.0}, kCtx);
  CHECK(state_diff(sample(t4, *t4.raref_head, 1.0), t4.u5) < 1e-10);
  CHECK(state_diff(sample(t4, *t4.raref_tail, 1.0), t4.u6) < 1e-10);

  for (double x : {-3.0, -0.2, 0.1, 1.7, 2.9, 5.0}) {
    CHECK(sample(t4, x, 1.0) == sample(t4, 2.0 * x, 2.0));
    CHECK(sample(t1, x, 1.0) == sample(t1, 2.0 * x, 2.0));
  }
}

TEST_CASE("exact fans conserve mass and momentum and gain Q T of energy", "[construct]") {
  for (const auto& [u1, ctx] : {std::pair{PrimitiveState{1.0, 0.8, 1.0}, kCtx}, {PrimitiveState{1.0, 1.2, 1.0}, kCtx},
                                {PrimitiveState{1.0, 1.8, 1.0}, kCtx}, {PrimitiveState{1.0, 2.8, 1.0}, kCtx},
                                {PrimitiveState{1.0, 2.8, 1.0}, kCtxBig}}) {
    const auto fan = solve(u1, ctx);
    const auto audit = conservation_audit(fan, 1.7, 200000);
    CHECK(audit.worst() < 1e-6);
  }
}

TEST_CASE("wave strengths from M1 alone agree with the constructions", "[construct]") {
  const auto check = [](const PrimitiveState& u1, const HeatingContext& ctx) {
    const auto fan = solve(u1, ctx);
    const auto exact = fan_strengths(fan);
    const auto oracle = wave_strength_oracle(mach(u1, ctx.gamma), ctx, fan.kind);
    CHECK_THAT(oracle.p4_over_p1, WithinRel(exact.p4_over_p1, 1e-8));
    CHECK_THAT(oracle.p6_over_p5, WithinRel(exact.p6_over_p5, 1e-8));
    CHECK_THAT(oracle.p8_over_p7, WithinRel(exact.p8_over_p7, 1e-8));
  };
  check({1.0, 0.8, 1.0}, kCtx);
  check({1.0, 1.2, 1.0}, kCtx);
  check({1.0, 1.8, 1.0}, kCtx);
  check({1.0, 2.8, 1.0}, kCtx);
  check({1.0, 2.8, 1.0}, kCtxBig);
}

TEST_CASE("invariant suite flags a corrupted fan", "[construct]") {
  auto fan = solve({1.0, 1.8, 1.0}, kCtx);
  REQUIRE(check_invariants(fan).ok());
  auto bad = fan;
  bad.u7.p *= 1.01;
  CHECK_FALSE(check_invariants(bad).ok());
  bad = fan;
  bad.u5.u *= 1.001;
  CHECK_FALSE(check_invariants(bad).ok());
  bad = fan;
  bad.s_right *= 0.99;
  CHECK_FALSE(check_invariants(bad).ok());
}
