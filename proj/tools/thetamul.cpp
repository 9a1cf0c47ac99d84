// Copyright 2026 The thetamul Authors.
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

// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "thetamul/dft.hpp"
#include "thetamul/errors.hpp"
#include "thetamul/intmul.hpp"
#include "thetamul/reference.hpp"
#include "thetamul/theta.hpp"
#include "thetamul/transform.hpp"

namespace {

using namespace thetamul;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* error_name(const Error& e) {
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const NotInvertible*>(&e)) return "NotInvertible";
  if (dynamic_cast<const IncompatibleCongruences*>(&e)) return "IncompatibleCongruences";
  if (dynamic_cast<const NotFound*>(&e)) return "NotFound";
  if (dynamic_cast<const InvalidTheta*>(&e)) return "InvalidTheta";
  if (dynamic_cast<const StrictViolation*>(&e)) return "StrictViolation";
  if (dynamic_cast<const ContextMismatch*>(&e)) return "ContextMismatch";
  if (dynamic_cast<const NormBoundViolation*>(&e)) return "NormBoundViolation";
  if (dynamic_cast<const SlotOverflow*>(&e)) return "SlotOverflow";
  if (dynamic_cast<const PlanBoundViolation*>(&e)) return "PlanBoundViolation";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "InvariantViolation";
  return "Error";
}

Int parse_hex(const std::string& s) {
  std::string digits = s;
  bool negative = false;
  if (!digits.empty() && digits[0] == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits.erase(0, 2);
  if (digits.empty() || digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw UsageError("malformed hex integer '" + s + "'");
  }
  Int x(digits, 16);
  return negative ? Int(-x) : x;
}

Int parse_decimal(const std::string& s, const char* what) {
  std::string t = s;
  if (!t.empty() && t[0] == '-') t.erase(0, 1);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string("malformed decimal ") + what + " '" + s + "'");
  }
  return Int(s, 10);
}

std::string to_hex(const Int& x) { return x.get_str(16); }

int cmd_mul(const std::string& a, const std::string& b, bool check, std::uint64_t min_n) {
  const Int u = parse_hex(a), v = parse_hex(b);
  MultiplyOptions options;
  options.min_bits = min_n;
  const Int w = multiply(u, v, options);
  std::cout << to_hex(w) << '\n';
  if (check && w != reference::reference_multiply(u, v)) {
    std::cerr << "check failed: product differs from the reference multiplier\n";
    return 1;
  }
  return 0;
}

int cmd_precompute(const std::string& q_text, std::size_t m, const std::string& theta_text, bool strict,
                   const std::string& out) {
  const Int q = parse_decimal(q_text, "q");
  const Int theta = parse_decimal(theta_text, "theta");
  ContextPtr ctx = precompute(Modulus::from_value(q), m, theta, strict);
  if (out.empty()) {
    std::cout << ctx->serialize();
  } else {
    std::ofstream file(out);
    if (!file) throw UsageError("cannot write '" + out + "'");
    file << ctx->serialize();
  }
  return 0;
}

int cmd_inspect(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  // parse() re-checks every invariant of the context.
  ContextPtr ctx = ThetaContext::parse(ss.str());
  std::cout << ctx->serialize() << "B = " << ctx->bound_B().get_str() << "\nvalid\n";
  return 0;
}

// Worked example data, in the same key = value layout as a context
// file; polynomials list the constant term first.
const char* kWorkedExample =
    "q = 3141592653589793238462833\n"
    "m = 4\n"
    "theta = 2542533431566904450922735\n"
    "u = 2718281828459045235360288\n"
    "U1 = -3202352 -5013490 951670 -3366162\n"
    "U2 = 1317423 -5192184 1849981 -4133936\n"
    "P = -292956 1136523 -927319 -394297\n"
    "r = 42602761\n"
    "J = 8514380 30962874 6504907 17106162\n"
    "x = 1414213562373095048801689\n"
    "y = 1732050807568877293527447\n"
    "X = 4285386 -3089740 3692532 3740635\n"
    "Y = -3075767 -2839272 -4018180 4629959\n"
    "F = 26582459129078 -4729783170300 -37123194804209 10266868543625\n"
    "Q = -11934644 20464841 -14729381 3932274\n"
    "G = 777998 398819 -1814782 995963\n"
    "D = -270537 2036309 -3680082 -1918607\n";

std::map<std::string, std::string> parse_fields(const std::string& text) {
  std::map<std::string, std::string> fields;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    if (eq == std::string::npos) throw UsageError("fixture line without '=': " + line);
    auto trim = [](const std::string& s) {
      const auto a = s.find_first_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return fields;
}

int cmd_verify_example(const std::string& fixture, bool dump) {
  if (dump) {
    std::cout << kWorkedExample;
    return 0;
  }
  std::string text = kWorkedExample;
  if (!fixture.empty()) {
    std::ifstream file(fixture);
    if (!file) throw UsageError("cannot read '" + fixture + "'");
    std::ostringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  auto fields = parse_fields(text);
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) throw UsageError("fixture is missing '" + key + "'");
    return it->second;
  };
  auto num = [&](const std::string& key) { return parse_decimal(get(key), key.c_str()); };
  auto poly = [&](const std::string& key) {
    std::istringstream is(get(key));
    std::vector<std::string> parts;
    for (std::string w; is >> w;) {
      parse_decimal(w, key.c_str());
      parts.push_back(w);
    }
    return CycloPoly::from_strings(parts);
  };

  const Int q = num("q"), theta = num("theta"), u = num("u"), r = num("r"), x = num("x"), y = num("y");
  const std::size_t m = num("m").get_ui();
  const CycloPoly U1 = poly("U1"), U2 = poly("U2"), P = poly("P"), J = poly("J"), D = poly("D");
  const CycloPoly X = poly("X"), Y = poly("Y"), F = poly("F"), Q = poly("Q"), G = poly("G");
  // floor(m q^(1/m)) exactly, as floor((m^m q)^(1/m)).
  const Int bound = floor_root(pow(Int(static_cast<unsigned long>(m)), m) * q, m);

  int failed = 0, index = 0;
  auto report = [&](bool ok, const std::string& what, const std::string& detail = "") {
    std::printf("check %d: %s  %s%s%s\n", ++index, ok ? "PASS" : "FAIL", what.c_str(), detail.empty() ? "" : "  ",
                detail.c_str());
    failed += !ok;
  };
  auto represents = [&](const CycloPoly& U, const Int& value) {
    return eval_at(U, theta, q) == mod(value, q) && norm(U) <= bound;
  };

  // The first printed representation has a sign error in its y^3 term; it is
  // reported but not counted as a failure when the corrected term is valid.
  {
    const bool ok = represents(U1, u);
    CycloPoly fixed = U1;
    fixed[m - 1] = -fixed[m - 1];
    if (!ok && represents(fixed, u)) {
      std::printf("check %d: ERRATUM  first representation of u  evaluates to %s; valid with the y^%zu sign negated\n",
                  ++index, eval_at(U1, theta, q).get_str().c_str(), m - 1);
    } else {
      report(ok, "first representation of u");
    }
  }
  report(represents(U2, u), "second representation of u");
  report(!P.is_zero() && eval_at(P, theta, q) == 0 && pow(norm(P), m) <= q, "P(theta) = 0 and |P|^m <= q");
  {
    std::string detail;
    bool ok = false;
    try {
      AuxPrime aux = find_aux_prime(P, q);
      ok = aux.r == r && aux.J == J;
      if (!ok) detail = "computed r = " + aux.r.get_str() + ", J = " + aux.J.to_string();
    } catch (const Error& e) {
      detail = e.what();
    }
    report(ok, "r and J reproduced from P", detail);
  }
  {
    std::string detail;
    bool ok = false;
    try {
      ContextPtr ctx = ThetaContext::assemble({q, m, theta, P, r, J, D, false});
      const CycloPoly f = negacyclic_mul(X, Y);
      const Reduction red = reduce_traced(f, *ctx);
      ok = represents(X, x) && represents(Y, y) && f == F && red.Q == Q && red.G == G;
      if (!ok) detail = "computed G = " + red.G.to_string();
    } catch (const Error& e) {
      detail = e.what();
    }
    report(ok, "F = XY, quotient Q and remainder G", detail);
  }
  report(eval_at(D, theta, q) == r * r % q && norm(D) <= bound, "D(theta) = r^2 and |D| within bound");
  {
    bool rejected = false;
    try {
      precompute(q, m, theta, true);
    } catch (const StrictViolation&) {
      rejected = true;
    } catch (const Error&) {
    }
    bool accepted = false;
    try {
      ContextPtr ctx = precompute(q, m, theta, false);
      accepted = from_theta(mul(to_theta(x, ctx), to_theta(y, ctx))) == x * y % q;
    } catch (const Error&) {
    }
    report(rejected && accepted, "strict mode rejects, default mode accepts");
  }
  std::printf("%d of %d checks failed\n", failed, index);
  return failed ? 1 : 0;
}

std::vector<Int> read_residues(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw UsageError("cannot read '" + path + "'");
    in = &file;
  }
  std::vector<Int> out;
  for (std::string line; std::getline(*in, line);) {
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    out.push_back(parse_decimal(line.substr(a, line.find_last_not_of(" \t\r") - a + 1), "residue"));
  }
  return out;
}

// eta with eta^2 = zeta and eta of order 2L, modulo the prime q.
Int square_root_of_root(const Int& q, const Int& zeta, std::size_t L) {
  const Int eta0 = primitive_root_of_unity(q, 2 * L);
  const Int sq = eta0 * eta0 % q;
  Int power = 1;
  for (std::size_t k = 0; k < L; ++k, power = power * sq % q) {
    if (power == zeta) {
      // eta0^(2k) = zeta with k odd; eta = eta0^(k^-1 mod 2L).
      const Int kinv = mod_inverse(Int(static_cast<unsigned long>(k)), Int(static_cast<unsigned long>(2 * L)));
      return mod_pow(eta0, kinv, q);
    }
  }
  throw InvalidArgument("zeta is not a principal root of unity of the given length");
}

int cmd_dft(const std::string& q_text, const std::string& zeta_text, std::size_t length, const std::string& strategy,
            std::size_t short_len, const std::string& input) {
  const Int q = parse_decimal(q_text, "q");
  const Int zeta = parse_decimal(zeta_text, "zeta");
  const Modulus modulus = Modulus::from_value(q);
  std::vector<Int> f = read_residues(input);
  if (f.size() != length) {
    throw UsageError("expected " + std::to_string(length) + " residues, read " + std::to_string(f.size()));
  }
  for (Int& x : f) x = mod(x, q);
  ResidueRing ring(q);
  std::vector<Int> out;
  if (strategy == "naive") {
    if (mod_pow(zeta, Int(static_cast<unsigned long>(length)), q) != 1 ||
        (length > 1 && mod(mod_pow(zeta, Int(static_cast<unsigned long>(length / 2)), q) - 1, modulus.prime()) == 0)) {
      throw InvalidArgument("zeta is not a principal root of unity of the given length");
    }
    out = naive_dft(ring, f, zeta);
  } else if (strategy == "ct") {
    out = cooley_tukey_dft(ring, f, zeta, short_len);
  } else {
    if (modulus.exponent() != 1) throw InvalidArgument("bluestein strategy needs a prime modulus");
    if (mod(q - 1, Int(static_cast<unsigned long>(2 * length))) != 0) {
      throw InvalidArgument("bluestein strategy needs q = 1 mod 2L");
    }
    out = bluestein_dft(ring, f, zeta, square_root_of_root(q, mod(zeta, q), length));
  }
  for (const Int& x : out) std::cout << x.get_str() << '\n';
  return 0;
}

int cmd_trace(std::uint64_t bits, std::uint64_t min_n) {
  if (bits < min_n) {
    std::cout << "reference path: " << bits << "-bit operands are below the " << min_n
              << "-bit threshold, multiply uses the reference multiplier\n";
    return 0;
  }
  const MulPlan& plan = cached_plan(bits);
  std::cout << "n = " << plan.n << "\nb = " << plan.b << "\nt = " << plan.t << "\nL = " << plan.L << '\n';
  std::cout << "q0 substituted = " << (plan.q0_substituted ? "yes" : "no") << '\n';
  const std::size_t lg_L = static_cast<std::size_t>(lg(std::uint64_t{plan.L}));
  for (std::size_t i = 0; i < kPrimeCount; ++i) {
    std::cout << "prime " << i << ": q = " << plan.q[i] << " zeta = " << plan.zeta[i] << " m = " << plan.m[i] << '\n';
    for (const StrictLevel& level : strict_plan_chain(lg_L, int_from_u64(plan.q[i]))) {
      std::cout << "  level lg L = " << level.lg_L << " lg q = " << level.lg_q << " m = " << level.m;
      if (level.lg_S >= level.lg_L) {
        std::cout << " lg S = " << level.lg_S << " >= lg L: base case\n";
      } else {
        std::cout << " lg S = " << level.lg_S << " p' = " << level.pprime.get_str() << " alpha' = " << level.alphaprime
                  << " lg q' = " << level.lg_qprime << " m' = " << level.mprime
                  << (level.qprime_in_range ? "" : " (q' outside its range)") << '\n';
      }
    }
  }
  return 0;
}

int cmd_bench(const std::vector<std::uint64_t>& sizes, bool check, int reps) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(1);
  std::printf("%10s %14s %14s%s\n", "bits", "multiply ms", "reference ms", check ? "  check" : "");
  int bad = 0;
  for (std::uint64_t bits : sizes) {
    const Int u = rng.get_z_bits(bits), v = rng.get_z_bits(bits);
    Int w, ref;
    auto time = [&](auto&& fn) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int i = 0; i < reps; ++i) fn();
      return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / reps;
    };
    const double tm = time([&] { w = multiply(u, v); });
    const double tr = time([&] { ref = reference::reference_multiply(u, v); });
    const bool ok = w == ref;
    bad += !ok;
    std::printf("%10llu %14.3f %14.3f%s\n", static_cast<unsigned long long>(bits), tm, tr,
                check ? (ok ? "  ok" : "  MISMATCH") : "");
  }
  return check && bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer multiplication via theta-representations and multivariate NTTs"};
  app.require_subcommand(1);

  std::string a, b;
  bool check = false;
  std::uint64_t min_n = kDefaultMinBits;
  auto* mul = app.add_subcommand("mul", "Multiply two hexadecimal integers");
  mul->add_option("u", a, "First factor (hex)")->required();
  mul->add_option("v", b, "Second factor (hex)")->required();
  mul->add_flag("--check", check, "Compare against the reference multiplier");
  mul->add_option("--min-n", min_n, "Operand size in bits below which the reference multiplier is used");

  std::string q_text, theta_text, out;
  std::size_t m = 1;
  bool strict = false;
  auto* pre = app.add_subcommand("precompute", "Build and print a theta context");
  pre->add_option("--q", q_text, "Prime power modulus (decimal)")->required();
  pre->add_option("--m", m, "Degree m, a power of two")->required();
  pre->add_option("--theta", theta_text, "theta with theta^m = -1 (decimal)")->required();
  pre->add_flag("--strict", strict, "Enforce the asymptotic regime check");
  pre->add_option("--out", out, "Write the context to this file");

  std::string context_file;
  auto* inspect = app.add_subcommand("inspect", "Validate and print a context file");
  inspect->add_option("file", context_file, "Context file written by precompute")->required();

  std::string fixture;
  bool dump = false;
  auto* verify = app.add_subcommand("verify-example", "Check the built-in worked example");
  verify->add_option("--fixture", fixture, "Alternative example data (key = value lines)");
  verify->add_flag("--dump-fixture", dump, "Print the built-in example data and exit");

  std::string zeta_text, strategy = "ct", input;
  std::size_t length = 0, short_len = 2;
  auto* dft = app.add_subcommand("dft", "Transform one residue per line");
  dft->add_option("--q", q_text, "Prime power modulus (decimal)")->required();
  dft->add_option("--zeta", zeta_text, "Principal root of unity of order --length")->required();
  dft->add_option("--length", length, "Transform length, a power of two")->required();
  dft->add_option("--strategy", strategy, "naive, ct or bluestein")->check(CLI::IsMember({"naive", "ct", "bluestein"}));
  dft->add_option("--short", short_len, "Short transform length for ct");
  dft->add_option("input", input, "Input file (default standard input)");

  std::uint64_t bits = 0;
  auto* trace = app.add_subcommand("trace", "Print the multiplication plan for an operand size");
  trace->add_option("--bits", bits, "Operand size in bits")->required();
  trace->add_option("--min-n", min_n, "Threshold below which the reference multiplier is used");

  std::vector<std::uint64_t> sizes{16384, 65536, 262144};
  int reps = 1;
  auto* bench = app.add_subcommand("bench", "Time multiply against the reference multiplier");
  bench->add_option("--bits", sizes, "Operand sizes in bits");
  bench->add_flag("--check", check, "Verify each product");
  bench->add_option("--reps", reps, "Repetitions per size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mul) return cmd_mul(a, b, check, min_n);
    if (*pre) return cmd_precompute(q_text, m, theta_text, strict, out);
    if (*inspect) return cmd_inspect(context_file);
    if (*verify) return cmd_verify_example(fixture, dump);
    if (*dft) return cmd_dft(q_text, zeta_text, length, strategy, short_len, input);
    if (*trace) return cmd_trace(bits, min_n);
    if (*bench) return cmd_bench(sizes, check, reps);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << error_name(e) << ": " << e.what() << '\n';
    return 1;
  }
  return 2;
}
