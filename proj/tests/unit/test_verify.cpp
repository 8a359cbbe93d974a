#include <string>

#include "doctest.h"
#include "kicktop/verify.hpp"

using namespace kicktop;

TEST_CASE("verify suite passes on the default systems") {
  const VerifyReport report = run_verify({});
  for (const auto& c : report.checks) {
    INFO(c.name, " residual ", c.residual, " ", c.detail);
    CHECK(c.passed);
  }
  CHECK(report.all_passed());
  CHECK(report.max_identity_residual() < 1e-9);
  CHECK(report.find("j=15: [Jz^2, X_j] ladder identity") != nullptr);
  CHECK(report.find("j=5: R X_m R^-1 = Z_-m") != nullptr);
}

TEST_CASE("a corrupted torsion only breaks the expansion check") {
  VerifyOptions options;
  options.systems = {SpinSystem::from_j(5)};
  options.corrupt_torsion_sign = true;
  const VerifyReport report = run_verify(options);
  CHECK_FALSE(report.all_passed());
  for (const auto& c : report.checks) {
    const bool expansion = c.name.find("first-order torsion expansion") != std::string::npos;
    INFO(c.name);
    CHECK(c.passed != expansion);
  }
}

TEST_CASE("spin-1/2 smoke run") {
  VerifyOptions options;
  options.systems = {SpinSystem::from_j(0.5)};
  const VerifyReport report = run_verify(options);
  CHECK(report.all_passed());
  CHECK(report.find("j=1/2: generators Hermitian") != nullptr);
  CHECK(report.find("j=1/2: [Jz^2, X_j] ladder identity") == nullptr);
}
