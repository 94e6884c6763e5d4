#include "mvalex/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

#include "mvalex/error.hpp"

namespace mvalex {

// ------------------------------------------------------------ BasisDiagram

BasisDiagram BasisDiagram::make(int k, const std::vector<Chord>& chords, const std::vector<int>& frees) {
  if (k < 0) throw Error(ErrorKind::Malformed, "negative boundary size");
  BasisDiagram d;
  d.mate_.assign(static_cast<std::size_t>(k), -2);
  d.kind_.assign(static_cast<std::size_t>(k), ArcKind::Free);
  auto claim = [&](int i) {
    if (i < 0 || i >= k) throw Error(ErrorKind::Malformed, "boundary index " + std::to_string(i) + " out of range");
    if (d.mate_[static_cast<std::size_t>(i)] != -2)
      throw Error(ErrorKind::Malformed, "boundary index " + std::to_string(i) + " used twice");
  };
  for (const auto& c : chords) {
    if (c.kind == ArcKind::Free) throw Error(ErrorKind::Malformed, "chord cannot be of kind FREE");
    if (c.i == c.j) throw Error(ErrorKind::Malformed, "chord with equal endpoints");
    claim(c.i);
    d.mate_[static_cast<std::size_t>(c.i)] = static_cast<std::int16_t>(c.j);
    claim(c.j);
    d.mate_[static_cast<std::size_t>(c.j)] = static_cast<std::int16_t>(c.i);
    d.kind_[static_cast<std::size_t>(c.i)] = d.kind_[static_cast<std::size_t>(c.j)] = c.kind;
  }
  for (int f : frees) {
    claim(f);
    d.mate_[static_cast<std::size_t>(f)] = -1;
  }
  for (int i = 0; i < k; ++i)
    if (d.mate_[static_cast<std::size_t>(i)] == -2)
      throw Error(ErrorKind::Malformed, "boundary index " + std::to_string(i) + " not covered");
  if (!d.is_planar()) throw Error(ErrorKind::NonPlanar, "crossing chords in " + to_text(d));
  return d;
}

BasisDiagram BasisDiagram::from_partners(std::vector<std::int16_t> mate, std::vector<ArcKind> kind) {
  BasisDiagram d;
  d.mate_ = std::move(mate);
  d.kind_ = std::move(kind);
  return d;
}

std::vector<Chord> BasisDiagram::chords() const {
  std::vector<Chord> out;
  for (int i = 0; i < size(); ++i)
    if (mate(i) > i) out.push_back({i, mate(i), kind(i)});
  return out;
}

std::vector<int> BasisDiagram::frees() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_free(i)) out.push_back(i);
  return out;
}

int BasisDiagram::count(ArcKind k) const {
  int n = 0;
  for (int i = 0; i < size(); ++i) {
    if (k == ArcKind::Free && is_free(i)) ++n;
    if (k != ArcKind::Free && !is_free(i) && mate(i) > i && kind(i) == k) ++n;
  }
  return n;
}

bool BasisDiagram::is_planar() const {
  // Free ends attach at a boundary point, so only the chords can obstruct.
  std::vector<int> open;
  for (int i = 0; i < size(); ++i) {
    int m = mate(i);
    if (m < 0) continue;
    if (m > i) {
      open.push_back(i);
    } else {
      if (open.empty() || open.back() != m) return false;
      open.pop_back();
    }
  }
  return open.empty();
}

std::string to_text(const BasisDiagram& d) {
  std::ostringstream os;
  os << "k=" << d.size();
  for (int i = 0; i < d.size(); ++i) {
    if (d.is_free(i)) {
      os << "; free(" << i << ")";
    } else if (d.mate(i) > i) {
      os << "; " << (d.kind(i) == ArcKind::Dotted ? "dotted" : "plain") << "(" << i << "," << d.mate(i) << ")";
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const BasisDiagram& d) { return os << to_text(d); }

BasisDiagram parse_diagram(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty()) parts.push_back(item);
  }
  if (parts.empty() || parts[0].rfind("k=", 0) != 0)
    throw Error(ErrorKind::SyntaxError, "diagram must start with k=<n>: '" + text + "'");
  int k = 0;
  try {
    k = std::stoi(parts[0].substr(2));
  } catch (const std::exception&) {
    throw Error(ErrorKind::SyntaxError, "bad boundary size in '" + text + "'");
  }
  std::vector<Chord> chords;
  std::vector<int> frees;
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const std::string& s = parts[p];
    auto open = s.find('(');
    auto close = s.find(')');
    if (open == std::string::npos || close != s.size() - 1)
      throw Error(ErrorKind::SyntaxError, "bad arc '" + s + "'");
    std::string name = s.substr(0, open);
    std::string args = s.substr(open + 1, close - open - 1);
    try {
      if (name == "free") {
        frees.push_back(std::stoi(args));
      } else if (name == "dotted" || name == "plain") {
        auto comma = args.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::SyntaxError, "chord needs two endpoints: '" + s + "'");
        int i = std::stoi(args.substr(0, comma));
        int j = std::stoi(args.substr(comma + 1));
        chords.push_back({std::min(i, j), std::max(i, j), name == "dotted" ? ArcKind::Dotted : ArcKind::Plain});
      } else {
        throw Error(ErrorKind::SyntaxError, "unknown arc kind '" + name + "'");
      }
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::SyntaxError, "bad arc '" + s + "'");
    }
  }
  return BasisDiagram::make(k, chords, frees);
}

// -------------------------------------------------------------- DiagramSum

DiagramSum::DiagramSum(const BasisDiagram& d, const LaurentPoly& coeff) : k_(d.size()) { add(d, coeff); }

LaurentPoly DiagramSum::coefficient(const BasisDiagram& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? LaurentPoly{} : it->second;
}

void DiagramSum::add(const BasisDiagram& d, const LaurentPoly& coeff) {
  if (d.size() != k_)
    throw Error(ErrorKind::SizeMismatch,
                "diagram of size " + std::to_string(d.size()) + " added to P_" + std::to_string(k_));
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(d, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiagramSum& DiagramSum::operator+=(const DiagramSum& o) {
  if (o.k_ != k_) throw Error(ErrorKind::SizeMismatch, "adding sums of different boundary sizes");
  for (const auto& [d, c] : o.terms_) add(d, c);
  return *this;
}

DiagramSum& DiagramSum::operator-=(const DiagramSum& o) {
  if (o.k_ != k_) throw Error(ErrorKind::SizeMismatch, "subtracting sums of different boundary sizes");
  for (const auto& [d, c] : o.terms_) add(d, -c);
  return *this;
}

DiagramSum operator*(const LaurentPoly& c, const DiagramSum& a) {
  DiagramSum out(a.k_);
  if (c.is_zero()) return out;
  for (const auto& [d, x] : a.terms_) out.add(d, c * x);
  return out;
}

DiagramSum DiagramSum::substitute(const std::map<ColorVar, ColorVar>& map) const {
  DiagramSum out(k_);
  for (const auto& [d, c] : terms_) out.add(d, mvalex::substitute(c, map));
  return out;
}

DiagramSum add_sums(const DiagramSum& a, const DiagramSum& b, const LaurentPoly& c) {
  if (a.size() != b.size()) throw Error(ErrorKind::SizeMismatch, "add_sums on different boundary sizes");
  DiagramSum out = a;
  out += c * b;
  return out;
}

std::string to_text(const DiagramSum& s) {
  std::ostringstream os;
  os << "P_" << s.size() << ":";
  if (s.is_zero()) os << " 0";
  for (const auto& [d, c] : s.terms()) os << "\n  " << to_text(c) << " : " << to_text(d);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DiagramSum& s) { return os << to_text(s); }

DiagramSum expand_plain(const BasisDiagram& d) {
  std::vector<int> plain;
  for (const auto& c : d.chords())
    if (c.kind == ArcKind::Plain) plain.push_back(c.i);
  DiagramSum out(d.size());
  const std::size_t n = plain.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::int16_t> mate(static_cast<std::size_t>(d.size()));
    std::vector<ArcKind> kind(static_cast<std::size_t>(d.size()));
    for (int i = 0; i < d.size(); ++i) {
      mate[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(d.mate(i));
      kind[static_cast<std::size_t>(i)] = d.kind(i);
    }
    for (std::size_t b = 0; b < n; ++b) {
      auto i = static_cast<std::size_t>(plain[b]);
      auto j = static_cast<std::size_t>(d.mate(plain[b]));
      if (mask & (std::size_t{1} << b)) {
        mate[i] = mate[j] = -1;
        kind[i] = kind[j] = ArcKind::Free;
      } else {
        kind[i] = kind[j] = ArcKind::Dotted;
      }
    }
    out.add(BasisDiagram::from_partners(std::move(mate), std::move(kind)), LaurentPoly(1));
  }
  return out;
}

DiagramSum expand_plain(const DiagramSum& s) {
  DiagramSum out(s.size());
  for (const auto& [d, c] : s.terms()) out += c * expand_plain(d);
  return out;
}

// ------------------------------------------------------------ PlanarTangle

PlanarTangle::PlanarTangle(int outer, std::vector<int> inner_sizes, std::vector<std::pair<Port, Port>> strands,
                           int loops)
    : outer_(outer), inner_(std::move(inner_sizes)), strands_(std::move(strands)), loops_(loops) {
  offsets_.push_back(0);
  offsets_.push_back(outer_);
  for (int s : inner_) {
    if (s < 0) throw Error(ErrorKind::Malformed, "negative inner disk size");
    offsets_.push_back(offsets_.back() + s);
  }
  partner_.assign(static_cast<std::size_t>(offsets_.back()), -1);
  for (const auto& [a, b] : strands_) {
    int pa = port_id(a);
    int pb = port_id(b);
    if (pa == pb || partner_[static_cast<std::size_t>(pa)] != -1 || partner_[static_cast<std::size_t>(pb)] != -1)
      throw Error(ErrorKind::Malformed, "planar tangle port used twice");
    partner_[static_cast<std::size_t>(pa)] = pb;
    partner_[static_cast<std::size_t>(pb)] = pa;
  }
  for (int p : partner_)
    if (p < 0) throw Error(ErrorKind::Malformed, "planar tangle leaves a boundary point unconnected");
}

int PlanarTangle::port_id(Port p) const {
  int size = p.disk < 0 ? outer_ : (p.disk < static_cast<int>(inner_.size()) ? inner_[static_cast<std::size_t>(p.disk)] : -1);
  if (p.disk < -1 || size < 0 || p.index < 0 || p.index >= size)
    throw Error(ErrorKind::Malformed, "planar tangle port out of range");
  return offsets_[static_cast<std::size_t>(p.disk + 1)] + p.index;
}

int PlanarTangle::box_bottom(int /*nb*/, int /*nt*/, int i) { return i; }
int PlanarTangle::box_top(int nb, int nt, int j) { return nb + nt - 1 - j; }

PlanarTangle PlanarTangle::stacking(int nb, int mid, int nt) {
  std::vector<std::pair<Port, Port>> s;
  for (int i = 0; i < nb; ++i) s.push_back({{-1, box_bottom(nb, nt, i)}, {0, box_bottom(nb, mid, i)}});
  for (int j = 0; j < mid; ++j) s.push_back({{0, box_top(nb, mid, j)}, {1, box_bottom(mid, nt, j)}});
  for (int j = 0; j < nt; ++j) s.push_back({{1, box_top(mid, nt, j)}, {-1, box_top(nb, nt, j)}});
  return PlanarTangle(nb + nt, {nb + mid, mid + nt}, std::move(s));
}

PlanarTangle PlanarTangle::multiplication(int n) { return stacking(n, n, n); }

PlanarTangle PlanarTangle::trace(int n) {
  std::vector<std::pair<Port, Port>> s;
  for (int i = 0; i < n; ++i) s.push_back({{0, box_bottom(n, n, i)}, {0, box_top(n, n, i)}});
  return PlanarTangle(0, {2 * n}, std::move(s));
}

PlanarTangle PlanarTangle::rotation(int k) {
  std::vector<std::pair<Port, Port>> s;
  for (int i = 0; i < k; ++i) s.push_back({{-1, i}, {0, (i + 1) % k}});
  return PlanarTangle(k, {k}, std::move(s));
}

PlanarTangle PlanarTangle::identity(int k) {
  std::vector<std::pair<Port, Port>> s;
  for (int i = 0; i < k; ++i) s.push_back({{-1, i}, {0, i}});
  return PlanarTangle(k, {k}, std::move(s));
}

// -------------------------------------------------------------------- glue

namespace {

struct Term {
  const BasisDiagram* diagram;
  const LaurentPoly* coeff;
};

// Per-thread scratch for tracing one product of input terms.
class Tracer {
 public:
  Tracer(const PlanarTangle& t, const GlueScalars& scalars) : t_(t), scalars_(scalars) {
    const int n = t.port_count();
    disk_of_.resize(static_cast<std::size_t>(n));
    index_of_.resize(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
      disk_of_[static_cast<std::size_t>(p)] = -1;
      index_of_[static_cast<std::size_t>(p)] = p;
    }
    for (int l = 0; l < static_cast<int>(t.inner_sizes().size()); ++l)
      for (int i = 0; i < t.inner_sizes()[static_cast<std::size_t>(l)]; ++i) {
        int p = t.disk_offset(l) + i;
        disk_of_[static_cast<std::size_t>(p)] = l;
        index_of_[static_cast<std::size_t>(p)] = i;
      }
    visited_.resize(static_cast<std::size_t>(n));
    mate_.resize(static_cast<std::size_t>(t.outer_size()));
    kind_.resize(static_cast<std::size_t>(t.outer_size()));
  }

  /// Traces one product; returns false when a vanishing rule fires.
  bool trace(const std::vector<const BasisDiagram*>& chosen, BasisDiagram& out, Integer& scalar) {
    chosen_ = &chosen;
    std::fill(visited_.begin(), visited_.end(), 0);
    const int outer = t_.outer_size();
    std::fill(mate_.begin(), mate_.end(), static_cast<std::int16_t>(-2));
    scalar = 1;

    // Paths from the outer boundary (R4, R5, R6).
    for (int o = 0; o < outer; ++o) {
      if (mate_[static_cast<std::size_t>(o)] != -2) continue;
      bool dotted = false;
      int end = walk(t_.partner(o), dotted);
      if (end >= 0) {
        mate_[static_cast<std::size_t>(o)] = static_cast<std::int16_t>(end);
        mate_[static_cast<std::size_t>(end)] = static_cast<std::int16_t>(o);
        kind_[static_cast<std::size_t>(o)] = kind_[static_cast<std::size_t>(end)] =
            dotted ? ArcKind::Dotted : ArcKind::Plain;
      } else {
        if (dotted) return false;
        mate_[static_cast<std::size_t>(o)] = -1;
        kind_[static_cast<std::size_t>(o)] = ArcKind::Free;
      }
    }
    // Interior paths between two free ends (R3, R4).
    for (int p = outer; p < t_.port_count(); ++p) {
      if (visited_[static_cast<std::size_t>(p)] || !arc_is_free(p)) continue;
      visited_[static_cast<std::size_t>(p)] = 1;
      bool dotted = false;
      walk(t_.partner(p), dotted);
      if (dotted) return false;
      scalar *= scalars_.free_path;
    }
    // Closed cycles (R1, R2).
    for (int p = outer; p < t_.port_count(); ++p) {
      if (visited_[static_cast<std::size_t>(p)]) continue;
      bool dotted = false;
      int cur = p;
      do {
        visited_[static_cast<std::size_t>(cur)] = 1;
        ArcKind k = ArcKind::Plain;
        int next = arc_partner(cur, k);
        if (k == ArcKind::Dotted) dotted = true;
        visited_[static_cast<std::size_t>(next)] = 1;
        cur = t_.partner(next);
      } while (cur != p);
      if (!dotted) return false;
      scalar *= scalars_.dotted_cycle;
    }
    if (scalar == 0) return false;
    out = BasisDiagram::from_partners(mate_, kind_);
    return true;
  }

 private:
  bool arc_is_free(int port) const {
    const auto& d = *(*chosen_)[static_cast<std::size_t>(disk_of_[static_cast<std::size_t>(port)])];
    return d.is_free(index_of_[static_cast<std::size_t>(port)]);
  }

  int arc_partner(int port, ArcKind& kind) const {
    int l = disk_of_[static_cast<std::size_t>(port)];
    const auto& d = *(*chosen_)[static_cast<std::size_t>(l)];
    int i = index_of_[static_cast<std::size_t>(port)];
    kind = d.kind(i);
    int m = d.mate(i);
    return m < 0 ? -1 : t_.disk_offset(l) + m;
  }

  // Follows a path starting at `cur` (reached through a tangle strand).
  // Returns the outer port where it ends, or -1 at a free end.
  int walk(int cur, bool& dotted) {
    const int outer = t_.outer_size();
    while (true) {
      if (cur < outer) return cur;
      visited_[static_cast<std::size_t>(cur)] = 1;
      ArcKind k = ArcKind::Plain;
      int next = arc_partner(cur, k);
      if (next < 0) return -1;
      if (k == ArcKind::Dotted) dotted = true;
      visited_[static_cast<std::size_t>(next)] = 1;
      cur = t_.partner(next);
    }
  }

  const PlanarTangle& t_;
  const GlueScalars& scalars_;
  const std::vector<const BasisDiagram*>* chosen_ = nullptr;
  std::vector<int> disk_of_;
  std::vector<int> index_of_;
  std::vector<char> visited_;
  std::vector<std::int16_t> mate_;
  std::vector<ArcKind> kind_;
};

}  // namespace

DiagramSum glue(const PlanarTangle& t, const std::vector<const DiagramSum*>& inputs, const GlueOptions& options) {
  if (inputs.size() != t.inner_sizes().size())
    throw Error(ErrorKind::SizeMismatch, "planar tangle has " + std::to_string(t.inner_sizes().size()) +
                                             " inner disks but " + std::to_string(inputs.size()) + " inputs");
  std::vector<std::vector<Term>> terms(inputs.size());
  std::uint64_t total = 1;
  for (std::size_t l = 0; l < inputs.size(); ++l) {
    if (inputs[l]->size() != t.inner_sizes()[l])
      throw Error(ErrorKind::SizeMismatch, "input " + std::to_string(l) + " lies in P_" +
                                               std::to_string(inputs[l]->size()) + " but the disk has " +
                                               std::to_string(t.inner_sizes()[l]) + " points");
    for (const auto& [d, c] : inputs[l]->terms()) terms[l].push_back({&d, &c});
    total *= terms[l].size();
  }
  DiagramSum result(t.outer_size());
  GlueStats stats;
  stats.raw = total;
  if (total == 0 || t.loops() > 0) {
    if (options.stats) *options.stats = stats;
    return result;
  }

  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(total)));
  std::vector<DiagramSum::Terms> partial(threads);
  std::vector<std::uint64_t> surviving(threads, 0);

  auto work = [&](unsigned w) {
    const std::uint64_t begin = total * w / threads;
    const std::uint64_t end = total * (w + 1) / threads;
    Tracer tracer(t, options.scalars);
    std::vector<const BasisDiagram*> chosen(inputs.size());
    std::vector<std::size_t> idx(inputs.size());
    BasisDiagram out;
    Integer scalar;
    auto& acc = partial[w];
    for (std::uint64_t n = begin; n < end; ++n) {
      std::uint64_t r = n;
      for (std::size_t l = inputs.size(); l-- > 0;) {
        idx[l] = static_cast<std::size_t>(r % terms[l].size());
        r /= terms[l].size();
        chosen[l] = terms[l][idx[l]].diagram;
      }
      if (!tracer.trace(chosen, out, scalar)) continue;
      ++surviving[w];
      LaurentPoly coeff(scalar);
      for (std::size_t l = 0; l < inputs.size(); ++l) coeff = coeff * *terms[l][idx[l]].coeff;
      auto [it, inserted] = acc.try_emplace(out, coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (unsigned w = 0; w < threads; ++w) {
    stats.surviving += surviving[w];
    for (const auto& [d, c] : partial[w]) result.add(d, c);
  }
  stats.merged = result.term_count();
  if (options.stats) *options.stats = stats;
  return result;
}

DiagramSum glue(const PlanarTangle& t, const std::vector<DiagramSum>& inputs, const GlueOptions& options) {
  std::vector<const DiagramSum*> ptrs;
  for (const auto& s : inputs) ptrs.push_back(&s);
  return glue(t, ptrs, options);
}

DiagramSum rotate(const DiagramSum& s) { return glue(PlanarTangle::rotation(s.size()), {s}); }

BasisDiagram identity_box(int n, ArcKind kind) {
  std::vector<Chord> chords;
  for (int i = 0; i < n; ++i)
    chords.push_back({PlanarTangle::box_bottom(n, n, i), PlanarTangle::box_top(n, n, i), kind});
  for (auto& c : chords)
    if (c.i > c.j) std::swap(c.i, c.j);
  return BasisDiagram::make(2 * n, chords, {});
}

DiagramSum identity_expansion(int n) { return expand_plain(identity_box(n, ArcKind::Plain)); }

BasisDiagram dotted_strand() { return BasisDiagram::make(2, {{0, 1, ArcKind::Dotted}}, {}); }
BasisDiagram free_pair() { return BasisDiagram::make(2, {}, {0, 1}); }

}  // namespace mvalex
