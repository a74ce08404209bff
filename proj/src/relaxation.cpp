#include "rendezvous/relaxation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rendezvous/errors.hpp"
#include "rendezvous/game.hpp"
#include "rendezvous/transform.hpp"

namespace rendezvous {

namespace {

void requireSmall(int k, int cap, const char* what) {
  requireLevel(k, what);
  if (k > cap)
    throw std::invalid_argument(std::string(what) + ": k=" + std::to_string(k) +
                                " is too large for a dense build (cap " + std::to_string(cap) +
                                ")");
}

}  // namespace

std::vector<std::vector<Rational>> uMatrix(int k) {
  requireSmall(k, 4, "uMatrix");
  if (k <= 3) {
    const auto v = denseCharacterMatrix(k);
    const std::size_t n = v.size();
    std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) u[r][c] = v[r][c].realPart();
    return u;
  }
  const auto v1 = denseCharacterMatrix(1);
  const auto v3 = denseCharacterMatrix(3);
  const std::size_t n = 81;
  std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      u[r][c] = (v1[r / 27][c / 27] * v3[r % 27][c % 27]).realPart();
  return u;
}

LpProblem buildPrimalLp(int k) {
  requireSmall(k, 4, "buildPrimalLp");
  const std::int64_t n = pow3(k);
  const PathVector m = mVector(k);
  const auto u = uMatrix(k);

  LpProblem prob;
  prob.name = "primal-k" + std::to_string(k);
  prob.sense = Sense::Maximize;
  prob.c.assign(static_cast<std::size_t>(n), Rational(1));
  prob.bounds.assign(static_cast<std::size_t>(n), VarBound::Free);
  prob.rows.reserve(static_cast<std::size_t>(2 * n));
  for (std::int64_t i = 0; i < n; ++i) {
    LpRow row;
    row.a.assign(static_cast<std::size_t>(n), Rational(0));
    row.a[static_cast<std::size_t>(i)] = 1;
    row.rel = Rel::Le;
    row.rhs = m[i];
    prob.rows.push_back(std::move(row));
  }
  for (std::int64_t r = 0; r < n; ++r) {
    LpRow row;
    row.a = u[static_cast<std::size_t>(r)];
    row.rel = Rel::Ge;
    row.rhs = 0;
    prob.rows.push_back(std::move(row));
  }
  return prob;
}

LpProblem buildDualLp(int k) {
  requireSmall(k, 4, "buildDualLp");
  const std::int64_t n = pow3(k);
  const PathVector m = mVector(k);
  const auto u = uMatrix(k);

  LpProblem prob;
  prob.name = "dual-k" + std::to_string(k);
  prob.sense = Sense::Minimize;
  prob.c.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) prob.c[static_cast<std::size_t>(i)] = m[i];
  prob.bounds.assign(static_cast<std::size_t>(n), VarBound::NonNeg);

  for (std::int64_t c = 0; c < n; ++c) {
    LpRow row;
    row.a.resize(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < n; ++r)
      row.a[static_cast<std::size_t>(r)] = u[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    row.rel = Rel::Ge;
    row.rhs = 0;
    prob.rows.push_back(std::move(row));
  }
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t s = digitSwap12(i, k);
    if (s <= i) continue;
    LpRow row;
    row.a.assign(static_cast<std::size_t>(n), Rational(0));
    row.a[static_cast<std::size_t>(i)] = 1;
    row.a[static_cast<std::size_t>(s)] = -1;
    row.rel = Rel::Eq;
    row.rhs = 0;
    prob.rows.push_back(std::move(row));
  }
  LpRow norm;
  norm.a.assign(static_cast<std::size_t>(n), Rational(1));
  norm.rel = Rel::Eq;
  norm.rhs = 1;
  prob.rows.push_back(std::move(norm));
  return prob;
}

FeasibilityReport checkFeasibleBound(int k, const PathVector& x) {
  requireLevel(k, "verifyFeasibleBound");
  if (x.level != k) throw std::invalid_argument("verifyFeasibleBound: vector level mismatch");

  FeasibilityReport rep;
  rep.bound = sumEntries(x) / pow3Rational(k);
  for (std::int64_t i = 0; i < x.size(); ++i)
    if (mEntry(k, i) < x[i]) {
      rep.dominationViolation = i;
      break;
    }
  const PathVector spec = realSpectrum(x);
  for (std::int64_t i = 0; i < spec.size(); ++i)
    if (spec[i].sign() < 0) {
      rep.spectrumViolation = i;
      break;
    }
  rep.feasible = rep.dominationViolation < 0 && rep.spectrumViolation < 0;
  return rep;
}

Rational verifyFeasibleBound(int k, const PathVector& x) {
  const FeasibilityReport rep = checkFeasibleBound(k, x);
  if (rep.dominationViolation >= 0)
    throw std::domain_error("verifyFeasibleBound: x exceeds the generator at index " +
                            std::to_string(rep.dominationViolation));
  if (rep.spectrumViolation >= 0)
    throw std::domain_error("verifyFeasibleBound: negative spectrum entry at index " +
                            std::to_string(rep.spectrumViolation));
  return rep.bound;
}

SdpaProblem buildSdpa(int k) {
  requireSmall(k, 3, "buildSdpa");
  const int n = static_cast<int>(pow3(k));
  const PathVector m = mVector(k);

  SdpaProblem sdpa;
  sdpa.nVars = n * n;
  sdpa.blockStruct = {n, -n * n};
  sdpa.c.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                Rational(-1) / pow3Rational(k));

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int idx = p * n + q + 1;
      sdpa.entries.push_back({0, 2, idx, idx, -m[digitSub(q, p, k)]});
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int idx = p * n + q + 1;
      const int lo = std::min(p, q) + 1, hi = std::max(p, q) + 1;
      sdpa.entries.push_back({idx, 1, lo, hi, p == q ? Rational(1) : Rational(1, 2)});
      sdpa.entries.push_back({idx, 2, idx, idx, Rational(-1)});
    }
  return sdpa;
}

std::string sdpaDecimal(const Rational& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v.toDouble());
  return buf;
}

namespace {

Rational decimalToRational(const std::string& tok) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < tok.size() && (tok[pos] == '+' || tok[pos] == '-')) neg = tok[pos++] == '-';
  std::string digits;
  int fracDigits = 0;
  bool seenDot = false, seenDigit = false;
  for (; pos < tok.size(); ++pos) {
    const char ch = tok[pos];
    if (ch == '.') {
      if (seenDot) throw std::invalid_argument("parseSdpa: malformed number " + tok);
      seenDot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seenDigit = true;
      if (seenDot) ++fracDigits;
    } else if (ch == 'e' || ch == 'E') {
      break;
    } else {
      throw std::invalid_argument("parseSdpa: malformed number " + tok);
    }
  }
  if (!seenDigit) throw std::invalid_argument("parseSdpa: malformed number " + tok);
  long exp10 = 0;
  if (pos < tok.size()) exp10 = std::stol(tok.substr(pos + 1));
  exp10 -= fracDigits;
  mpz_class num(digits.empty() ? "0" : digits, 10);  // base fixed: "0.5" yields leading-zero digit strings
  if (neg) num = -num;
  mpz_class den = 1;
  if (exp10 >= 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    num *= scale;
  } else {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
  }
  return {num, den};
}

}  // namespace

void exportSdpa(int k, const std::string& path) {
  const SdpaProblem sdpa = buildSdpa(k);
  const int n = sdpa.blockStruct[0];

  std::ofstream out(path);
  if (!out) throw std::runtime_error("exportSdpa: cannot open " + path);
  out << "* level-" << k << " meeting-game relaxation: one variable per entry of the\n"
      << "* " << n << "x" << n << " payoff candidate H; block 1 keeps (H+H^T)/2 positive\n"
      << "* semidefinite, block 2 holds the elementwise slack against the truncated\n"
      << "* meeting-time matrix. The objective is scaled by -3^(-" << k << "), so the\n"
      << "* solver's minimum equals minus the certified game bound times 3^" << k << ".\n"
      << "* Exact rational data: see the sidecar " << path << ".exact.json\n";
  out << sdpa.nVars << "\n2\n" << sdpa.blockStruct[0] << " " << sdpa.blockStruct[1] << "\n";
  for (std::size_t i = 0; i < sdpa.c.size(); ++i)
    out << (i ? " " : "") << sdpaDecimal(sdpa.c[i]);
  out << "\n";
  for (const auto& e : sdpa.entries)
    out << e.matrix << " " << e.block << " " << e.row << " " << e.col << " "
        << sdpaDecimal(e.value) << "\n";
  if (!out) throw std::runtime_error("exportSdpa: write failed for " + path);
  out.close();

  nlohmann::json side;
  side["schema_version"] = 1;
  side["k"] = k;
  side["n_vars"] = sdpa.nVars;
  side["block_struct"] = sdpa.blockStruct;
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& v : sdpa.c) cj.push_back(v.str());
  side["c"] = std::move(cj);
  nlohmann::json ej = nlohmann::json::array();
  for (const auto& e : sdpa.entries)
    ej.push_back({e.matrix, e.block, e.row, e.col, e.value.str()});
  side["entries"] = std::move(ej);

  const std::string sidePath = path + ".exact.json";
  std::ofstream sideOut(sidePath);
  if (!sideOut) throw std::runtime_error("exportSdpa: cannot open " + sidePath);
  sideOut << side.dump(1, '\t') << "\n";
  if (!sideOut) throw std::runtime_error("exportSdpa: write failed for " + sidePath);
}

SdpaProblem parseSdpa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parseSdpa: cannot open " + path);

  std::string body, line;
  while (std::getline(in, line)) {
    if (!line.empty() && (line[0] == '*' || line[0] == '"')) continue;
    for (char& ch : line)
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
    body += line;
    body += ' ';
  }
  std::istringstream toks(body);

  SdpaProblem sdpa;
  int nBlock = 0;
  if (!(toks >> sdpa.nVars >> nBlock) || sdpa.nVars <= 0 || nBlock <= 0)
    throw std::runtime_error("parseSdpa: bad header in " + path);
  sdpa.blockStruct.resize(static_cast<std::size_t>(nBlock));
  for (auto& b : sdpa.blockStruct)
    if (!(toks >> b)) throw std::runtime_error("parseSdpa: truncated block structure");
  std::string tok;
  sdpa.c.reserve(static_cast<std::size_t>(sdpa.nVars));
  for (int i = 0; i < sdpa.nVars; ++i) {
    if (!(toks >> tok)) throw std::runtime_error("parseSdpa: truncated objective");
    sdpa.c.push_back(decimalToRational(tok));
  }
  SdpaEntry e;
  while (toks >> e.matrix) {
    if (!(toks >> e.block >> e.row >> e.col >> tok))
      throw std::runtime_error("parseSdpa: truncated entry line");
    e.value = decimalToRational(tok);
    sdpa.entries.push_back(e);
  }
  return sdpa;
}

bool sdpaSameDecimal(const SdpaProblem& a, const SdpaProblem& b) {
  if (a.nVars != b.nVars || a.blockStruct != b.blockStruct || a.c.size() != b.c.size() ||
      a.entries.size() != b.entries.size())
    return false;
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (sdpaDecimal(a.c[i]) != sdpaDecimal(b.c[i])) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const SdpaEntry& x = a.entries[i];
    const SdpaEntry& y = b.entries[i];
    if (x.matrix != y.matrix || x.block != y.block || x.row != y.row || x.col != y.col ||
        sdpaDecimal(x.value) != sdpaDecimal(y.value))
      return false;
  }
  return true;
}

}  // namespace rendezvous
