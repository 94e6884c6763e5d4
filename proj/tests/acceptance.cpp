#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "mvalex/braidrep.hpp"
#include "mvalex/error.hpp"
#include "mvalex/invariant.hpp"
#include "mvalex/oracle.hpp"
#include "mvalex/resolve.hpp"
#include "mvalex/tangles.hpp"
#include "mvalex/verify.hpp"

using namespace mvalex;

namespace {

// Pinned limits.
constexpr double kMatrixSeconds = 5.0;
constexpr double kLink12Seconds = 10.0;
constexpr int kRandomMoves = 100;
constexpr int kRandomWords = 50;
constexpr std::uint64_t kStateReduction = 1000;  // surviving products must be this far below 5^c

const ColorVar A("a"), B("b"), C("c");

LaurentPoly q(const ColorVar& v, int e = 1) { return LaurentPoly::var(v, e); }
LaurentPoly qd(const ColorVar& v) { return q(v) - q(v, -1); }

std::string read(const std::string& name) {
  std::ifstream f(std::string(MVALEX_CORPUS_DIR) + "/" + name);
  if (!f) throw Error(ErrorKind::Malformed, "missing corpus file " + name);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

MorseTangle tangle(const std::string& name) { return parse_tangle(read(name + ".tangle")); }
ColoredPDCode pd(const std::string& name) { return parse_pd(read(name + ".pd")); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  #%-2d %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
}

// sigma_p sigma_{p+1} sigma_p sigma_p^-1 sigma_{p+1}^-1 sigma_p^-1 from three nested second moves,
// followed by a third move on its lower half.
std::optional<MorseTangle> third_move_via_second(const MorseTangle& t, std::mt19937& rng) {
  std::vector<MoveSite> sites;
  for (const auto& s : move_sites(t, MoveKind::R2))
    if (s.variant == 0 && s.position + 2 < t.width_at(s.level) &&
        t.orientation_at(s.level, s.position + 2) == Orientation::Up)
      sites.push_back(s);
  if (sites.empty()) return std::nullopt;
  const MoveSite s = sites[rng() % sites.size()];
  for (int tries = 0; tries < 16; ++tries) {
    const int v1 = static_cast<int>(rng() % 2), v2 = static_cast<int>(rng() % 2), v3 = static_cast<int>(rng() % 2);
    if (v1 == v3 && v1 != v2) continue;
    MorseTangle u = insert_move(t, MoveKind::R2, {s.level, s.position, v1});
    u = insert_move(u, MoveKind::R2, {s.level + 1, s.position + 1, v2});
    u = insert_move(u, MoveKind::R2, {s.level + 2, s.position, v3});
    return insert_move(u, MoveKind::R3, {s.level, s.position, 0});
  }
  return std::nullopt;
}

}  // namespace

int main() {
  criterion(1, "matrix golden tests: phi(s1^1), phi(s1^2), phi(s2^1) equal the printed matrices exactly, < 5 s", [] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto d1 = differences(phi_direct(colored_word({{1, 1}}, 1)), printed_sigma1_v1());
    const auto d2 = differences(phi_direct(colored_word({{1, 1}}, 2)), printed_sigma1_v2());
    const auto d3 = differences(phi_direct(colored_word({{2, 1}}, 1)), printed_sigma2_v1());
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(d1.empty(), "s1^1 differs at " + (d1.empty() ? "" : d1[0]));
    o.require(d2.empty(), "s1^2 differs at " + (d2.empty() ? "" : d2[0]));
    o.require(d3.empty(), "s2^1 differs at " + (d3.empty() ? "" : d3[0]));
    o.require(s < kMatrixSeconds, "took " + std::to_string(s) + " s");
    int passing = 0;
    for (const auto& e : calibrate()) passing += e.passes() && e.z == 1 && e.d_cyc == -1 && e.row_above ? 1 : e.passes() ? 100 : 0;
    o.require(passing == 1, "calibration is not unique at z=1, d_cyc=-1");
    return o;
  });

  criterion(2, "braid relation: phi(s1^3 s2^4 s1^1) = phi(s2^5 s1^6 s2^1) exactly", [] {
    Outcome o;
    const R3Check r = check_braid_r3();
    o.require(to_text(r.lhs) == "s1^3s2^4s1^1" && to_text(r.rhs) == "s2^5s1^6s2^1", "unexpected coloring");
    const auto d = differences(r.lhs_matrix, r.rhs_matrix);
    o.require(r.equal && d.empty(), d.empty() ? "" : d[0]);
    return o;
  });

  criterion(3, "third skein relation: the check matrix is identically zero", [] {
    Outcome o;
    o.require(is_zero(check_murakami3()), to_text(check_murakami3()));
    o.require(!is_zero(check_murakami3({}, true)), "dropping the identity term still gives zero");
    return o;
  });

  criterion(4, "second move: identity resolution for all colorings, 25 raw, 6 nonzero, 4 unit diagrams", [] {
    Outcome o;
    const DiagramSum id = identity_expansion(2);
    for (const auto& x : {A, B})
      for (const auto& y : {A, B})
        for (bool pos_below : {true, false}) {
          const LocalCount lc = local_count(r2_tangle(x, y, pos_below));
          const std::string tag = x.id + y.id + (pos_below ? " +-" : " -+");
          o.require(lc.stats.raw == 25, tag + ": raw " + std::to_string(lc.stats.raw));
          o.require(lc.stats.surviving == 6, tag + ": nonzero " + std::to_string(lc.stats.surviving));
          o.require(lc.stats.merged == 4, tag + ": diagrams " + std::to_string(lc.stats.merged));
          o.require(lc.value == id, tag + ": not the identity");
          for (const auto& [d, c] : lc.value.terms()) o.require(c == 1, tag + ": coefficient " + to_text(c));
          o.require(evaluate(r2_tangle(x, y, pos_below)) == id, tag + ": frontier contraction differs");
        }
    o.require(evaluate(tangle("r2_pos_neg")) == id && evaluate(tangle("r2_neg_pos")) == id, "corpus stacks differ");
    return o;
  });

  criterion(5, "third move: both sides equal, 125 raw and 15 nonzero per side", [] {
    Outcome o;
    int configs = 0;
    for (const auto& x : {A, B, C})
      for (const auto& y : {A, B, C})
        for (const auto& z : {A, B, C})
          for (int s = 0; s < 8; ++s) {
            const std::array<int, 3> sg{s & 1 ? -1 : 1, s & 2 ? -1 : 1, s & 4 ? -1 : 1};
            if (sg[0] == sg[2] && sg[0] != sg[1]) continue;
            const auto [lhs, rhs] = r3_tangles({x, y, z}, sg);
            const LocalCount l = local_count(lhs), r = local_count(rhs);
            const std::string tag = x.id + y.id + z.id + " " + std::to_string(s);
            o.require(l.value == r.value, tag + ": sides differ");
            o.require(l.stats.raw == 125 && r.stats.raw == 125, tag + ": raw count");
            o.require(l.stats.surviving == 15 && r.stats.surviving == 15, tag + ": nonzero count");
            ++configs;
          }
    o.require(configs == 27 * 6, "configuration count");
    o.require(evaluate(tangle("r3_left")) == evaluate(tangle("r3_right")), "corpus sides differ");
    return o;
  });

  criterion(6, "skein: pos - neg = (q - q^-1) uncrossed; curls give -q^-1, -q^-1, -q, -q", [] {
    Outcome o;
    for (const auto& c : {A, B}) {
      o.require(resolve_crossing(1, c, c) - resolve_crossing(-1, c, c) == qd(c) * identity_expansion(2),
                "local skein for " + c.id);
      const MorseTangle p = braid_tangle({c, c}, {{0, 1}}), n = braid_tangle({c, c}, {{0, -1}});
      o.require(evaluate(p) - evaluate(n) == qd(c) * evaluate(braid_tangle({c, c}, {})), "tangle skein for " + c.id);
    }
    const DiagramSum straight = evaluate(tangle("unknot"));
    const std::vector<std::pair<std::string, LaurentPoly>> curls{{"curl_right_pos", -q(A, -1)},
                                                                 {"curl_right_neg", -q(A, -1)},
                                                                 {"curl_left_pos", -q(A)},
                                                                 {"curl_left_neg", -q(A)}};
    for (const auto& [file, scalar] : curls) o.require(evaluate(tangle(file)) == scalar * straight, file);
    return o;
  });

  criterion(7, "normalized invariance: 100 random moves on bundled tangles and every cut of every bundled link", [] {
    Outcome o;
    std::vector<std::pair<std::string, MorseTangle>> bases;
    for (const char* n : {"unknot", "trefoil", "figure8", "hopf_pos", "hopf_neg", "whitehead", "borromean", "link12",
                          "curl_right_pos", "curl_left_neg", "split"})
      bases.push_back({n, tangle(n)});
    std::vector<RationalFunction> want;
    for (const auto& [n, t] : bases) want.push_back(delta_m_prime(t).value);
    std::vector<MorseTangle> current;
    for (const auto& b : bases) current.push_back(b.second);
    std::mt19937 rng(2024);
    int done = 0, r3 = 0;
    while (done < kRandomMoves) {
      const std::size_t i = rng() % bases.size();
      const int kind = done % 3;
      std::optional<MorseTangle> next;
      if (kind == 2) {
        next = third_move_via_second(current[i], rng);
        if (next) ++r3;
      } else {
        const MoveKind mk = kind == 0 ? MoveKind::R2 : MoveKind::Curl;
        const auto sites = move_sites(current[i], mk);
        if (!sites.empty()) next = insert_move(current[i], mk, sites[rng() % sites.size()]);
      }
      if (!next) continue;
      current[i] = *next;
      ++done;
      o.require(delta_m_prime(current[i]).value == want[i], bases[i].first + " after move " + std::to_string(done));
    }
    o.require(r3 >= kRandomMoves / 3, "only " + std::to_string(r3) + " third moves");
    int cuts = 0;
    for (const char* n : {"unknot", "trefoil", "trefoil_unsigned", "figure8", "hopf_pos", "hopf_neg", "whitehead", "borromean",
                          "link12"}) {
      const ColoredPDCode code = pd(n);
      std::set<int> edges(code.loops.begin(), code.loops.end());
      for (const auto& x : code.crossings) edges.insert(x.legs.begin(), x.legs.end());
      const RationalFunction ref = delta_m_prime(pd_to_morse(code, code.cut.value_or(*edges.begin()))).value;
      for (int e : edges) {
        ++cuts;
        o.require(delta_m_prime(pd_to_morse(code, e)).value == ref, std::string(n) + " cut at " + std::to_string(e));
      }
      const std::string tname = std::string(n) == "trefoil_unsigned" ? "trefoil" : n;
      o.require(delta_m_prime(tangle(tname)).value == ref, std::string(n) + ": PD and tangle differ");
    }
    o.detail += o.pass ? std::to_string(done) + " moves (" + std::to_string(r3) + " third), " + std::to_string(cuts) + " cuts" : "";
    return o;
  });

  criterion(8, "axioms: unknot is 1/(q_a - q_a^-1), split unions are 0", [] {
    Outcome o;
    const RationalFunction want(1, qd(A));
    o.require(delta_m_prime(tangle("unknot")).value == want, "unknot tangle");
    o.require(delta_m_prime(pd_to_morse(pd("unknot"))).value == want, "unknot PD");
    for (const char* n : {"split", "split_hopf"}) {
      const RationalFunction v = delta_m_prime(tangle(n)).value;
      o.require(v.is_zero(), std::string(n) + " gives " + to_text(v));
    }
    return o;
  });

  criterion(9, "idempotents: v_k orthogonal, rho(e) = sum v_k, phi multiplicative on random words", [] {
    Outcome o;
    o.require(check_idempotents(), "v_k are not orthogonal idempotents");
    DiagramSum sum(6);
    for (const auto& d : vbasis()) sum += DiagramSum(d, 1);
    o.require(rho(colored_word({})) == sum, "rho(e) differs from the sum");
    std::mt19937 rng(9);
    for (int k = 0; k < kRandomWords; ++k) {
      std::vector<std::pair<int, int>> word;
      const int len = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < len; ++i) word.push_back({1 + static_cast<int>(rng() % 2), rng() % 2 ? 1 : -1});
      const ColoredBraidWord w = colored_word(word, 1 + static_cast<int>(rng() % 6));
      o.require(equal(phi(w), phi_direct(w)), to_text(w));
    }
    return o;
  });

  criterion(10, "oracle: engine and Fox calculus agree up to a unit on trefoil, figure-eight, Hopf, Whitehead, Borromean", [] {
    Outcome o;
    const LaurentPoly t = q(A, 2), ti = q(A, -2);
    o.require(fox_alexander(wirtinger(pd("trefoil_unsigned"))) == unit_normal_form(t - 1 + ti), "trefoil bootstrap");
    o.require(fox_alexander(wirtinger(pd("hopf_pos"))) == 1, "Hopf bootstrap");
    const std::vector<std::pair<std::string, std::optional<LaurentPoly>>> cases{
        {"trefoil", t - 1 + ti}, {"figure8", t - 3 + ti}, {"hopf_pos", LaurentPoly(1)}, {"hopf_neg", LaurentPoly(1)},
        {"whitehead", std::nullopt}, {"borromean", std::nullopt}};
    for (const auto& [n, expect] : cases) {
      const OracleReport r = compare(tangle(n));
      o.require(r.match, n + ": engine " + to_text(r.engine) + " vs oracle " + to_text(r.oracle));
      if (expect) o.require(equal_up_to_unit(r.oracle, *expect), n + ": oracle gives " + to_text(r.oracle));
    }
    return o;
  });

  criterion(11, "performance: the 12-crossing link in < 10 s with surviving terms far below 5^12", [] {
    Outcome o;
    const MorseTangle t = tangle("link12");
    o.require(t.crossing_count() == 12, "not a 12-crossing diagram");
    const auto t0 = std::chrono::steady_clock::now();
    ContractionStats stats;
    EvaluateOptions eo;
    eo.stats = &stats;
    const NormalizedInvariant inv = delta_m_prime(t, eo);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::uint64_t naive = 1;
    for (int i = 0; i < 12; ++i) naive *= 5;
    const std::uint64_t surviving = stats.total_surviving;
    o.require(s < kLink12Seconds, "took " + std::to_string(s) + " s");
    o.require(surviving * kStateReduction < naive, "surviving " + std::to_string(surviving));
    o.require(compare(t).match, "oracle disagrees");
    if (o.pass)
      o.detail = "surviving products " + std::to_string(surviving) + ", peak frontier " + std::to_string(stats.peak_terms) +
                 ", 5^12 = " + std::to_string(naive);
    (void)inv;
    return o;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
