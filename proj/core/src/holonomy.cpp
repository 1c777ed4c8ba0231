#include "qholo/holonomy.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <json.hpp>

#include "kernel.hpp"

namespace qholo {

const char* to_string(Framing f) { return f == Framing::kZero ? "zero" : "blackboard"; }

std::string RecursionAnsatz::to_string() const {
  return "order=" + std::to_string(order) + " M<=" + std::to_string(m_deg) + " a<=" + std::to_string(a_deg) +
         " q<=" + std::to_string(q_deg);
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::vector<int> component_colors(const ColoredBraid& b) {
  const auto cyc = b.cycles();
  std::vector<int> out;
  for (const auto& c : cyc) out.push_back(b.colors[static_cast<std::size_t>(c.front())]);
  return out;
}

}  // namespace

RationalFn framed_invariant(const ColoredBraid& b, const ColorSpec& spec, Framing framing, Evaluator& ev) {
  RationalFn v = colored_homfly(b, spec, ev);
  if (framing == Framing::kBlackboard) return v;
  const std::vector<int> writhes = b.self_writhes();
  for (std::size_t c = 0; c < spec.size(); ++c) {
    if (spec[c].n == 0 || writhes[c] == 0) continue;
    RationalFn ff = framing_factor(spec[c].n, true, ev);
    if (spec[c].kind == ComponentColor::kRow) ff = ff.q_inverted();
    v /= ff.pow(writhes[c]);
  }
  return v;
}

SequenceTable build_table(const ColoredBraid& b, int axis, int n_max, const TableOptions& opts) {
  validate_braid(b);
  if (n_max < 0) throw Error("n_max must be nonnegative");
  const std::vector<int> base = component_colors(b);
  if (axis < 0 || axis >= static_cast<int>(base.size()))
    throw Error("axis " + std::to_string(axis) + " is not a component index");

  SequenceTable t;
  t.id = opts.id.empty() ? braid_to_string(b) : opts.id;
  t.braid = b;
  t.axis = axis;
  t.framing = opts.framing;
  t.shape = opts.shape;
  t.values.assign(static_cast<std::size_t>(n_max) + 1, RationalFn(0L));

  unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(n_max) + 1);

  // Largest colors first: they dominate the running time.
  std::atomic<int> next{n_max};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    Evaluator ev;  // one cache per worker, so workers never wait on each other
    try {
      for (int n = next--; n >= 0; n = next--) {
        ColorSpec spec;
        for (int c : base) spec.push_back({opts.shape, c});
        spec[static_cast<std::size_t>(axis)].n = n;
        RationalFn v = framed_invariant(b, spec, opts.framing, ev);
        t.values[static_cast<std::size_t>(n)] = std::move(v);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return t;
}

SequenceView specialize_table(const SequenceTable& t, int N) {
  const Binding bind[] = {Binding::a_to_q_power(N)};
  SequenceView out;
  out.reserve(t.values.size());
  for (const auto& v : t.values) out.emplace_back(specialize(v, bind));
  return out;
}

// ---------------------------------------------------------------------------
// Guessing

namespace {

LaurentPoly lcm(const LaurentPoly& x, const LaurentPoly& y) { return x * divide_exact(y, gcd(x, y)); }

bool annihilates_at(const OreOperator& p, const std::vector<RationalFn>& f, int n) {
  const Binding bind[] = {Binding::M_to_q_power(n)};
  RationalFn s(0L);
  for (int j = 0; j <= p.order(); ++j)
    if (!p.coeff(j).is_zero()) s += RationalFn(specialize(p.coeff(j), bind)) * f[static_cast<std::size_t>(n + j)];
  return s.is_zero();
}

struct Columns {
  RecursionAnsatz A;
  int index(int j, int m, int ea, int eq) const {
    return ((j * (A.m_deg + 1) + m) * (A.a_deg + 1) + ea) * (A.q_deg + 1) + eq;
  }
  OreOperator to_operator(const std::vector<Integer>& v) const {
    std::vector<LaurentPoly> coeffs;
    for (int j = 0; j <= A.order; ++j) {
      std::vector<LaurentPoly::Term> terms;
      for (int m = 0; m <= A.m_deg; ++m)
        for (int ea = 0; ea <= A.a_deg; ++ea)
          for (int eq = 0; eq <= A.q_deg; ++eq) {
            const Integer& c = v[static_cast<std::size_t>(index(j, m, ea, eq))];
            if (c != 0) terms.push_back({LaurentPoly::pack({ea, eq, m}), c});
          }
      coeffs.push_back(LaurentPoly::from_terms(std::move(terms), kVarsAQM));
    }
    return OreOperator(Algebra::kWt, std::move(coeffs));
  }
};

// Appends the monomial equations of index n: sum over unknowns c_{j,m,i,k} a^i q^k q^{nm}
// times f_{n+j}, with the f's brought to a common denominator.
void append_equations(const Columns& cols, const std::vector<RationalFn>& f, int n,
                      std::vector<detail::SparseRow>& rows) {
  const int d = cols.A.order;
  LaurentPoly den(1L);
  for (int j = 0; j <= d; ++j) den = lcm(den, f[static_cast<std::size_t>(n + j)].den());
  std::map<std::pair<int, int>, std::size_t> row_of;  // (a, q) exponent -> row
  for (int j = 0; j <= d; ++j) {
    const RationalFn& fj = f[static_cast<std::size_t>(n + j)];
    if (fj.is_zero()) continue;
    const LaurentPoly g = fj.num() * divide_exact(den, fj.den());
    for (const auto& term : g.terms()) {
      const Exponents e = LaurentPoly::unpack(term.key);
      for (int m = 0; m <= cols.A.m_deg; ++m)
        for (int ea = 0; ea <= cols.A.a_deg; ++ea)
          for (int eq = 0; eq <= cols.A.q_deg; ++eq) {
            const std::pair<int, int> key{e[0] + ea, e[1] + eq + n * m};
            auto [it, fresh] = row_of.try_emplace(key, rows.size());
            if (fresh) rows.emplace_back();
            rows[it->second].entries.emplace_back(cols.index(j, m, ea, eq), term.coef);
          }
    }
  }
}

// Each fitted index raises the rank by roughly the average seen so far, so the deficit
// unknowns - rank - 1 says how many more indices the fit needs.
int estimate_required(const GuessReport& rep, int n_max) {
  const long fitted = std::max<long>(1, static_cast<long>(rep.fit_indices.size()));
  const long per_index = std::max<long>(1, rep.rank / fitted);
  const long deficit = std::max<long>(1, rep.unknowns - rep.rank - 1);
  return static_cast<int>(n_max + (deficit + per_index - 1) / per_index);
}

void validate(const RecursionAnsatz& A) {
  if (A.order < 0 || A.m_deg < 0 || A.a_deg < 0 || A.q_deg < 0) throw Error("ansatz bounds must be nonnegative");
}

}  // namespace

std::optional<OreOperator> guess_recursion(const SequenceTable& t, const RecursionAnsatz& A, GuessReport* report) {
  validate(A);
  GuessReport rep;
  const int n_max = t.n_max();
  const int usable = n_max - A.order + 1;
  const int fit = usable - kHeldOut;
  rep.unknowns = A.unknowns();
  for (int n = 0; n < usable; ++n) (n < fit ? rep.fit_indices : rep.held_out).push_back(n);
  if (fit <= 0) {
    if (report) *report = rep;
    throw InsufficientData("table up to n=" + std::to_string(n_max) + " leaves no index to fit an order-" +
                               std::to_string(A.order) + " recursion after holding out " +
                               std::to_string(kHeldOut),
                           std::max(n_max + 1, A.order + kHeldOut + 1));
  }

  const Columns cols{A};
  std::vector<detail::SparseRow> rows;
  for (int n : rep.fit_indices) append_equations(cols, t.values, n, rows);
  rep.equations = static_cast<long>(rows.size());

  const auto kernel = detail::integer_kernel(rows, static_cast<int>(A.unknowns()));
  rep.rank = kernel.rank;
  rep.kernel_dim = static_cast<int>(kernel.basis.size());
  if (report) *report = rep;
  if (kernel.basis.empty()) return std::nullopt;

  auto insufficient = [&](const std::string& why) {
    const int need = estimate_required(rep, n_max);
    return InsufficientData(why + "; the fit used " + std::to_string(rep.equations) + " equations for " +
                                std::to_string(rep.unknowns) + " unknowns, try n_max >= " + std::to_string(need),
                            need);
  };
  auto passes_held_out = [&](const OreOperator& p) {
    for (int n : rep.held_out)
      if (!annihilates_at(p, t.values, n)) return false;
    return true;
  };

  std::vector<OreOperator> ops;
  for (const auto& v : kernel.basis) ops.push_back(content_free(cols.to_operator(v)));
  if (ops.size() > 1) {
    // A generic combination tells whether the kernel is spurious before paying for gcds.
    std::mt19937_64 rng(0x5eed);
    OreOperator mix(Algebra::kWt, {});
    for (const auto& v : kernel.basis)
      mix = mix + op_multiply(OreOperator::scalar(Algebra::kWt, LaurentPoly(static_cast<long>(rng() % 97) + 1)),
                              cols.to_operator(v));
    if (mix.is_zero() || !passes_held_out(mix))
      throw insufficient("kernel of dimension " + std::to_string(ops.size()) + " fails the held-out indices");
  }
  OreOperator g = ops.front();
  for (std::size_t i = 1; i < ops.size() && g.order() > 0; ++i) g = right_gcd(g, ops[i]);
  if (g.order() <= 0 || !passes_held_out(g))
    throw insufficient("the fitted operator fails the held-out indices");
  return content_free(g);
}

SearchResult search_recursion(const SequenceTable& t, const SearchLimits& lim) {
  SearchResult res;
  for (int d = 1; d <= lim.max_order; ++d)
    for (int m = 0; m <= lim.max_m_deg; ++m)
      for (int b = 0; b <= lim.max_bound; ++b) {
        const RecursionAnsatz A{d, m, b, b};
        try {
          auto p = guess_recursion(t, A, &res.report);
          if (p) {
            res.op = std::move(p);
            res.ansatz = A;
            return res;
          }
          res.exhausted.push_back(A);
        } catch (const InsufficientData& e) {
          // Larger ansätze at this order only need more data; move on to the next order.
          res.stopped = e;
          b = lim.max_bound;
          m = lim.max_m_deg;
        }
      }
  return res;
}

VerifyReport verify_recursion(const OreOperator& p, const SequenceTable& t, int fitted_through) {
  if (p.is_zero()) throw Error("cannot verify the zero operator");
  VerifyReport rep;
  const SequenceView r = op_apply(p, t.values);
  rep.checked = static_cast<int>(r.size());
  for (int n = 0; n < rep.checked; ++n) {
    if (n > fitted_through && fitted_through >= 0) rep.held_out.push_back(n);
    if (rep.pass && !r[static_cast<std::size_t>(n)].is_zero()) {
      rep.pass = false;
      rep.first_failing = n;
    }
  }
  if (fitted_through >= 0 && static_cast<int>(rep.held_out.size()) < kHeldOut)
    throw Error("verification needs at least " + std::to_string(kHeldOut) + " indices beyond the fitted range");
  return rep;
}

SpecializationReport specialization_suite(const OreOperator& p, const SequenceTable& t, const std::vector<int>& Ns) {
  SpecializationReport rep;
  const Binding both[] = {Binding::set_one(Var::a), Binding::set_one(Var::q)};
  const Binding q1[] = {Binding::set_one(Var::q)};
  rep.classical = op_specialize(p, both);
  for (int N : Ns) {
    SpecializationReport::PerN r;
    r.N = N;
    const Binding atN[] = {Binding::a_to_q_power(N)};
    const OreOperator pN = op_specialize(p, atN);
    if (!pN.is_zero() && t.n_max() >= pN.order()) {
      const SequenceView res = op_apply(pN, specialize_table(t, N));
      for (std::size_t n = 0; n < res.size(); ++n)
        if (!res[n].is_zero()) {
          r.annihilates = false;
          r.first_failing = static_cast<int>(n);
          break;
        }
    }
    r.classical = op_specialize(pN, q1);
    if (!(r.classical == rep.classical)) rep.classical_agree = false;
    if (!r.annihilates) rep.pass = false;
    rep.per_N.push_back(std::move(r));
  }
  if (!rep.classical_agree) rep.pass = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Conjecture experiment

std::vector<APolyTerm> parse_apoly(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed A-polynomial file: ") + e.what(), e.byte);
  }
  if (!j.is_array() || j.empty()) throw ParseError("A-polynomial file must be a nonempty JSON list", 0);
  std::vector<APolyTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_object() || !e.contains("coef") || !e.contains("e_M") || !e.contains("e_L") ||
        !e["e_M"].is_number_integer() || !e["e_L"].is_number_integer())
      throw ParseError("A-polynomial term " + std::to_string(i) + " needs integer coef, e_M, e_L", i);
    APolyTerm t;
    if (e["coef"].is_number_integer()) {
      t.coef = Integer(e["coef"].get<long>());
    } else if (e["coef"].is_string()) {
      if (t.coef.set_str(e["coef"].get<std::string>(), 10) != 0)
        throw ParseError("A-polynomial term " + std::to_string(i) + " has a non-integer coef", i);
    } else {
      throw ParseError("A-polynomial term " + std::to_string(i) + " has a non-integer coef", i);
    }
    t.e_M = e["e_M"].get<int>();
    t.e_L = e["e_L"].get<int>();
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

LaurentPoly strip_monomial(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Exponents lo = p.min_exponents();
  for (auto& x : lo) x = -x;
  return p.shifted(lo);
}

}  // namespace

ConjectureReport conjecture_report(const OreOperator& p, const std::vector<APolyTerm>& apoly) {
  ConjectureReport rep;
  const Binding both[] = {Binding::set_one(Var::a), Binding::set_one(Var::q)};
  const OreOperator c = p.algebra() == Algebra::kClassical ? p : op_specialize(p, both);
  LaurentPoly cl(0L);
  for (int j = 0; j <= c.order(); ++j) cl += c.coeff(j) * LaurentPoly::variable(Var::a, j);
  LaurentPoly sup(0L);
  for (const auto& t : apoly) sup += LaurentPoly::monomial(t.coef, {t.e_L, 0, t.e_M}, kVarsA | kVarsM);
  rep.classical = cl;
  rep.supplied = sup;
  if (sup.is_zero()) throw Error("the supplied A-polynomial is zero");
  if (cl.is_zero()) {
    rep.finding = "the operator vanishes at a = q = 1; nothing to compare";
    return rep;
  }
  // Monomials are units on both sides; compare the polynomial parts.
  const auto quot = try_divide(strip_monomial(cl), strip_monomial(sup));
  if (!quot) {
    rep.finding = "division not exact";
    return rep;
  }
  if (quot->depends_on(Var::a)) {
    rep.finding = "division exact but the quotient depends on L: " + quot->to_string();
    return rep;
  }
  rep.divides = true;
  rep.quotient = *quot;
  rep.finding = "division exact; b(M) = " + quot->to_string();
  return rep;
}

}  // namespace qholo
