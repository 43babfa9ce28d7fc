#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "levysup/errors.hpp"
#include "levysup/json_io.hpp"
#include "levysup/model.hpp"
#include "levysup/quadrature.hpp"
#include "models.hpp"

using namespace levysup;
using doctest::Approx;

namespace {

Err code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Err::EvaluationError;
}

// quadrature reference for E J^p e^{r J} of the positive jump law
cdouble pos_weighted_moment(const PositiveJumps& pos, cdouble r, int p) {
  auto f = [&](double x) {
    return std::pow(x, p) * std::exp(r * x) * pos_density(pos, x);
  };
  return integrate_tail(f, 0.0, pos_mean(pos)).value;
}

}  // namespace

TEST_CASE("fixtures validate") {
  validate(fixtures::m1());
  validate(fixtures::example3());
  validate(fixtures::mg1());
  validate(fixtures::bm_only());
  validate(fixtures::hyperexp2_ns());
  validate(fixtures::erlang2_s());
  validate(fixtures::spectrally_positive_halfnormal());
  validate(fixtures::tabulated_ns());
  validate(fixtures::erlang2_diffusion(1.0));
}

TEST_CASE("validation rejects structural defects") {
  auto m = fixtures::hyperexp2_ns();
  m.neg.weights = {0.5, 0.6};
  CHECK(code_of([&] { validate(m); }) == Err::Validation);

  m = fixtures::m1();
  m.neg.rate = -1.0;
  CHECK(code_of([&] { validate(m); }) == Err::Validation);

  m = fixtures::m1();
  m.sigma = -0.1;
  CHECK(code_of([&] { validate(m); }) == Err::Validation);

  // dominant pole must be real and unique
  m = fixtures::example3();
  m.neg.poles[0].b = cdouble(1.5, 0.0);  // complex pair now has the least Re
  CHECK(code_of([&] { validate(m); }) == Err::Validation);

  // complex pole without its conjugate partner
  m = fixtures::example3();
  m.neg.poles.pop_back();
  CHECK(code_of([&] { validate(m); }) == Err::Validation);

  // tabulated density must integrate to 1
  m = fixtures::tabulated_ns();
  m.pos.tab_f = {0.0, 2.0, 0.0};
  CHECK(code_of([&] { validate(m); }) == Err::Validation);

  m = fixtures::tabulated_ns();
  m.pos.tab_x = {0.0, 1.0, 0.5};
  CHECK(code_of([&] { validate(m); }) == Err::Validation);
}

TEST_CASE("pole form of the catalog laws") {
  // hyperexponential: simple real poles with weights w_i r_i
  auto hx = fixtures::hyperexp2_ns().neg;
  auto poles = pole_form(hx);
  REQUIRE(poles.size() == 2);
  CHECK(poles[0].b.real() == Approx(1.0));
  CHECK(poles[0].k == 0);
  CHECK(poles[0].a[0].real() == Approx(0.5 * 1.0));
  CHECK(poles[1].b.real() == Approx(2.0));
  CHECK(poles[1].a[0].real() == Approx(0.5 * 2.0));

  // Erlang(d, b): one pole of order d, only the top coefficient nonzero
  auto er = fixtures::erlang2_s().neg;
  poles = pole_form(er);
  REQUIRE(poles.size() == 1);
  CHECK(poles[0].b.real() == Approx(2.0));
  CHECK(poles[0].k == 1);
  CHECK(std::abs(poles[0].a[0]) == Approx(0.0));
  CHECK(poles[0].a[1].real() == Approx(4.0));  // b^d / (d-1)!
}

TEST_CASE("negative jump densities integrate to one") {
  for (const auto& neg :
       {fixtures::m1().neg, fixtures::hyperexp2_ns().neg,
        fixtures::erlang2_s().neg, fixtures::example3().neg}) {
    auto mass =
        integrate_tail([&](double z) { return neg_density(neg, z); }, 0.0,
                       neg_mean(neg));
    CHECK(mass.value == Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("oscillatory pole density matches its closed form") {
  // example3's table: K (1 - cos(2 pi z)) e^{-z}
  auto neg = fixtures::example3().neg;
  const double K = 1.0 + 1.0 / (4.0 * M_PI * M_PI);
  for (double z : {0.1, 0.5, 1.0, 2.3, 7.0}) {
    double ref = K * (1.0 - std::cos(2.0 * M_PI * z)) * std::exp(-z);
    CHECK(neg_density(neg, z) == Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("positive transforms against quadrature") {
  for (const auto& m :
       {fixtures::mg1(), fixtures::example3(),
        fixtures::spectrally_positive_halfnormal(), fixtures::tabulated_ns()}) {
    const auto& pos = m.pos;
    for (cdouble r : {cdouble(-0.7, 0.0), cdouble(0.0, 1.3), cdouble(-0.2, -2.0)}) {
      cdouble ref = pos_weighted_moment(pos, r, 0);
      CHECK(std::abs(pos_mgf(pos, r) - ref) < 1e-8);
      auto d = pos_mgf_derivs(pos, r, 3);
      REQUIRE(d.size() == 4);
      for (int p = 0; p <= 3; ++p)
        CHECK(std::abs(d[p] - pos_weighted_moment(pos, r, p)) < 1e-7);
    }
    CHECK(pos_mean(pos) == Approx(pos_weighted_moment(pos, 0.0, 1).real()));
    CHECK(pos_moment2(pos) == Approx(pos_weighted_moment(pos, 0.0, 2).real()));
  }
}

TEST_CASE("rational positive mgf closed forms") {
  PositiveJumps p;
  p.rate = 1.0;
  p.kind = PosKind::Exponential;
  p.beta = 3.0;
  CHECK(std::abs(pos_mgf(p, 1.0) - cdouble(1.5)) < 1e-14);  // 3/(3-1)

  p.kind = PosKind::Erlang;
  p.n = 2;
  CHECK(std::abs(pos_mgf(p, 1.0) - cdouble(2.25)) < 1e-14);

  p.kind = PosKind::Hyperexponential;
  p.weights = {0.25, 0.75};
  p.rates = {1.0, 4.0};
  cdouble want = 0.25 * (1.0 / (1.0 - 0.5)) + 0.75 * (4.0 / (4.0 - 0.5));
  CHECK(std::abs(pos_mgf(p, 0.5) - want) < 1e-14);

  // analytic continuation holds past the pole, evaluation at it throws
  p.kind = PosKind::Exponential;
  CHECK(pos_mgf(p, 5.0).real() == Approx(3.0 / (3.0 - 5.0)));
  CHECK_THROWS_AS((void)pos_mgf(p, 3.0), Error);
}

TEST_CASE("negative mgf sign convention") {
  // neg_mgf(r) = E exp(r * (-|J|)) so at real r < 0 it exceeds 1
  auto neg = fixtures::m1().neg;  // Exp(1) magnitude
  CHECK(neg_mgf(neg, -0.5).real() == Approx(2.0));        // 1/(1-0.5)
  CHECK(neg_mgf(neg, 0.5).real() == Approx(1.0 / 1.5));   // 1/(1+0.5)
  CHECK(neg_mean(neg) == Approx(1.0));
  CHECK(neg_moment2(neg) == Approx(2.0));

  auto er = fixtures::erlang2_s().neg;  // Erlang(2, 2)
  CHECK(neg_mean(er) == Approx(1.0));
  CHECK(neg_moment2(er) == Approx(1.5));  // d(d+1)/b^2

  auto osc = fixtures::example3().neg;
  auto q = integrate_tail([&](double z) { return z * neg_density(osc, z); },
                          0.0, 1.0);
  CHECK(neg_mean(osc) == Approx(q.value).epsilon(1e-9));
}

TEST_CASE("cumulant basics") {
  for (const auto& m : {fixtures::m1(), fixtures::example3(), fixtures::mg1(),
                        fixtures::hyperexp2_ns(), fixtures::tabulated_ns()}) {
    CHECK(cumulant(m, 0.0) == cdouble(0.0));
    // k'(0) equals the mean, checked against a central difference
    double h = 1e-6;
    double fd = (cumulant(m, h).real() - cumulant(m, -h).real()) / (2 * h);
    CHECK(mean(m) == Approx(fd).epsilon(1e-6));
    double fd2 =
        (cumulant(m, h) - 2.0 * cumulant(m, 0.0) + cumulant(m, -h)).real() /
        (h * h);
    CHECK(variance(m) == Approx(fd2).epsilon(1e-3));
    CHECK(std::abs(cumulant_deriv(m, 0.3) -
                   (cumulant(m, 0.3 + h) - cumulant(m, 0.3 - h)) / (2 * h)) <
          1e-5);
  }
  // moment identities
  auto m = fixtures::hyperexp2_ns();
  CHECK(mean(m) == Approx(0.3 + 1.0 / 3.0 - 2.0 * 0.75));
  CHECK(variance(m) ==
        Approx(1.0 + 1.0 * 2.0 / 9.0 + 2.0 * (0.5 * 2.0 + 0.5 * 0.5)));
}

TEST_CASE("case split") {
  auto c = classify(fixtures::m1());  // sigma = 0, a > 0: creeping
  CHECK(c.tag == CaseTag::S);
  CHECK(c.D == 1);
  CHECK(c.N == 1);

  c = classify(fixtures::example3());  // sigma > 0
  CHECK(c.tag == CaseTag::NS);
  CHECK(c.D == 3);
  CHECK(c.N == 4);

  c = classify(fixtures::mg1());  // sigma = 0, a < 0
  CHECK(c.tag == CaseTag::NS);
  CHECK(c.D == 0);
  CHECK(c.N == 1);

  c = classify(fixtures::erlang2_s());
  CHECK(c.tag == CaseTag::S);
  CHECK(c.D == 2);
  CHECK(c.N == 2);

  CHECK(pos_is_rational(fixtures::mg1().pos));
  CHECK(pos_is_rational(fixtures::m1().pos));  // no positive jumps
  CHECK(!pos_is_rational(fixtures::example3().pos));
  CHECK(!pos_is_rational(fixtures::tabulated_ns().pos));
}

TEST_CASE("json round trip") {
  for (const auto& m :
       {fixtures::m1(), fixtures::example3(), fixtures::mg1(),
        fixtures::hyperexp2_ns(), fixtures::erlang2_s(),
        fixtures::tabulated_ns()}) {
    ModelSpec back = parse_model(serialize_model(m));
    for (cdouble r : {cdouble(-0.4, 0.0), cdouble(0.1, 2.0)})
      CHECK(std::abs(cumulant(back, r) - cumulant(m, r)) < 1e-14);
  }
}

TEST_CASE("json rejects typos loudly") {
  CHECK(code_of([] { (void)parse_model("{"); }) == Err::Validation);
  CHECK(code_of([] {
          (void)parse_model(R"({"drift": 1, "sigma": 0,
            "pos_jumps": {"rate": 0}, "neg_jumps": {"rate": 0}})");
        }) == Err::Validation);
  CHECK(code_of([] {
          (void)parse_model(R"({"drift_a": 1, "sigma": 0,
            "pos_jumps": {"rate": 1, "kind": "exp", "params": {"beta": 1}},
            "neg_jumps": {"rate": 0}})");
        }) == Err::Validation);
  CHECK(code_of([] {
          (void)parse_model(R"({"drift_a": 1, "sigma": 0,
            "pos_jumps": {"rate": 0}, "neg_jumps": {"rate": 0},
            "extra": 3})");
        }) == Err::Validation);
  // exit-code mapping: bad input is 1
  try {
    (void)parse_model("{}");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 1);
  }
  Error num(Err::ConvergenceError, "x");
  CHECK(num.exit_code() == 2);
}
