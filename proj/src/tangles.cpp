#include "mvalex/tangles.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mvalex/error.hpp"
#include "union_find.hpp"

namespace mvalex {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::string pos_text(int level, int pos) {
  return "level " + std::to_string(level) + ", position " + std::to_string(pos + 1);
}

}  // namespace

Slice Slice::cup(int position, Turn turn, std::optional<ColorVar> color) {
  Slice s;
  s.kind = SliceKind::Cup;
  s.position = position;
  s.turn = turn;
  s.color = std::move(color);
  return s;
}

Slice Slice::cap(int position, std::optional<Turn> turn) {
  Slice s;
  s.kind = SliceKind::Cap;
  s.position = position;
  s.turn = turn;
  return s;
}

Slice Slice::cross(int position, int sign) {
  Slice s;
  s.kind = SliceKind::Cross;
  s.position = position;
  s.sign = sign < 0 ? -1 : 1;
  return s;
}

int HalfInteger::value() const {
  if (!is_integer()) throw Error(ErrorKind::Malformed, "rotation number " + to_string() + " is not an integer");
  return twice / 2;
}

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

// ------------------------------------------------------------ MorseTangle

MorseTangle MorseTangle::make(std::vector<Endpoint> bottom, std::vector<Slice> slices,
                              std::optional<std::vector<Endpoint>> top) {
  MorseTangle t;
  t.bottom_ = std::move(bottom);
  t.slices_ = std::move(slices);
  const int h_count = static_cast<int>(t.slices_.size());

  t.widths_.push_back(static_cast<int>(t.bottom_.size()));
  for (int h = 0; h < h_count; ++h) {
    const Slice& s = t.slices_[at(h)];
    const int w = t.widths_.back();
    const int limit = s.kind == SliceKind::Cup ? w : w - 2;
    if (s.position < 0 || s.position > limit)
      throw Error(ErrorKind::WidthError, std::string(s.kind == SliceKind::Cup ? "cup" : s.kind == SliceKind::Cap ? "cap" : "crossing") +
                                             " at position " + std::to_string(s.position + 1) + " but the width at " +
                                             "level " + std::to_string(h) + " is " + std::to_string(w));
    t.widths_.push_back(w + (s.kind == SliceKind::Cup ? 2 : s.kind == SliceKind::Cap ? -2 : 0));
  }
  t.level_offset_.push_back(0);
  for (int w : t.widths_) t.level_offset_.push_back(t.level_offset_.back() + w);
  const int nodes = t.level_offset_.back();

  detail::UnionFind uf(nodes);
  t.node_orientation_.assign(at(nodes), Orientation::Up);
  std::vector<std::pair<int, ColorVar>> color_marks;
  for (int i = 0; i < static_cast<int>(t.bottom_.size()); ++i) {
    t.node_orientation_[at(i)] = t.bottom_[at(i)].orientation;
    color_marks.push_back({i, t.bottom_[at(i)].color});
  }
  t.turns_.assign(at(h_count), Turn::Ccw);

  for (int h = 0; h < h_count; ++h) {
    const Slice& s = t.slices_[at(h)];
    const int w = t.widths_[at(h)];
    const int off = t.level_offset_[at(h)];
    const int up = t.level_offset_[at(h + 1)];
    const int p = s.position;
    auto link = [&](int a, int b) {
      uf.unite(off + a, up + b);
      t.node_orientation_[at(up + b)] = t.node_orientation_[at(off + a)];
    };
    auto orient = [&](int a) { return t.node_orientation_[at(off + a)]; };
    switch (s.kind) {
      case SliceKind::Cup: {
        if (!s.turn) throw Error(ErrorKind::OrientationError, "cup at level " + std::to_string(h) + " has no turn");
        for (int i = 0; i < w; ++i) link(i, i < p ? i : i + 2);
        uf.unite(up + p, up + p + 1);
        const bool ccw = *s.turn == Turn::Ccw;
        t.node_orientation_[at(up + p)] = ccw ? Orientation::Down : Orientation::Up;
        t.node_orientation_[at(up + p + 1)] = ccw ? Orientation::Up : Orientation::Down;
        t.turns_[at(h)] = *s.turn;
        if (s.color) color_marks.push_back({up + p, *s.color});
        break;
      }
      case SliceKind::Cap: {
        if (orient(p) == orient(p + 1))
          throw Error(ErrorKind::OrientationError, "cap at " + pos_text(h, p) + " joins two strands with the same orientation");
        const Turn derived = orient(p) == Orientation::Up ? Turn::Cw : Turn::Ccw;
        if (s.turn && *s.turn != derived)
          throw Error(ErrorKind::OrientationError, "cap at " + pos_text(h, p) + " is declared " +
                                                       (*s.turn == Turn::Cw ? "cw" : "ccw") + " but the strands turn " +
                                                       (derived == Turn::Cw ? "cw" : "ccw"));
        t.turns_[at(h)] = derived;
        for (int i = 0; i < w; ++i)
          if (i < p) link(i, i);
          else if (i >= p + 2) link(i, i - 2);
        uf.unite(off + p, off + p + 1);
        break;
      }
      case SliceKind::Cross: {
        if (orient(p) != Orientation::Up || orient(p + 1) != Orientation::Up)
          throw Error(ErrorKind::OrientationError, "crossing at " + pos_text(h, p) + " does not join two upward strands");
        for (int i = 0; i < w; ++i) link(i, i == p ? p + 1 : i == p + 1 ? p : i);
        break;
      }
    }
  }

  const int last = t.level_offset_[at(h_count)];
  const int wtop = t.widths_.back();
  if (top) {
    if (static_cast<int>(top->size()) != wtop)
      throw Error(ErrorKind::WidthError, "top lists " + std::to_string(top->size()) + " endpoints but the width is " +
                                             std::to_string(wtop));
    for (int i = 0; i < wtop; ++i) {
      if ((*top)[at(i)].orientation != t.node_orientation_[at(last + i)])
        throw Error(ErrorKind::OrientationError, "top endpoint " + std::to_string(i + 1) + " has the wrong orientation");
      color_marks.push_back({last + i, (*top)[at(i)].color});
    }
  }

  // Components, numbered by first node.
  std::vector<int> root_component(at(nodes), -1);
  t.node_component_.assign(at(nodes), -1);
  for (int n = 0; n < nodes; ++n) {
    int r = uf.find(n);
    if (root_component[at(r)] < 0) {
      root_component[at(r)] = static_cast<int>(t.components_.size());
      t.components_.push_back({});
    }
    t.node_component_[at(n)] = root_component[at(r)];
  }
  std::vector<std::optional<ColorVar>> comp_color(t.components_.size());
  for (const auto& [n, c] : color_marks) {
    auto& slot = comp_color[at(t.node_component_[at(n)])];
    if (slot && *slot != c)
      throw Error(ErrorKind::ColorError, "a component is colored both " + slot->id + " and " + c.id);
    slot = c;
  }
  for (std::size_t k = 0; k < t.components_.size(); ++k) {
    if (!comp_color[k]) throw Error(ErrorKind::ColorError, "component " + std::to_string(k) + " has no color");
    t.components_[k].color = *comp_color[k];
  }
  for (int i = 0; i < static_cast<int>(t.bottom_.size()); ++i) t.components_[at(t.node_component_[at(i)])].closed = false;
  for (int i = 0; i < wtop; ++i) t.components_[at(t.node_component_[at(last + i)])].closed = false;

  t.slice_component_.assign(at(h_count), -1);
  for (int h = 0; h < h_count; ++h) {
    const Slice& s = t.slices_[at(h)];
    if (s.kind == SliceKind::Cross) continue;
    const int node = s.kind == SliceKind::Cup ? t.level_offset_[at(h + 1)] + s.position : t.level_offset_[at(h)] + s.position;
    const int c = t.node_component_[at(node)];
    t.slice_component_[at(h)] = c;
    t.components_[at(c)].rotation_twice += t.turns_[at(h)] == Turn::Ccw ? 1 : -1;
  }

  t.top_.clear();
  for (int i = 0; i < wtop; ++i)
    t.top_.push_back({t.components_[at(t.node_component_[at(last + i)])].color, t.node_orientation_[at(last + i)]});
  return t;
}

int MorseTangle::component_at(int level, int pos) const {
  if (level < 0 || level >= levels() || pos < 0 || pos >= width_at(level))
    throw Error(ErrorKind::WidthError, "no strand at " + pos_text(level, pos));
  return node_component_[at(level_offset_[at(level)] + pos)];
}

const ColorVar& MorseTangle::color_at(int level, int pos) const {
  return components_[at(component_at(level, pos))].color;
}

Orientation MorseTangle::orientation_at(int level, int pos) const {
  component_at(level, pos);
  return node_orientation_[at(level_offset_[at(level)] + pos)];
}

std::vector<ColorVar> MorseTangle::colors() const {
  std::set<ColorVar> s;
  for (const auto& c : components_) s.insert(c.color);
  return {s.begin(), s.end()};
}

int MorseTangle::crossing_count() const {
  return static_cast<int>(std::count_if(slices_.begin(), slices_.end(),
                                        [](const Slice& s) { return s.kind == SliceKind::Cross; }));
}

bool MorseTangle::is_one_strand() const {
  if (bottom_.size() + top_.size() != 2) return false;
  return std::count_if(components_.begin(), components_.end(), [](const Component& c) { return !c.closed; }) == 1;
}

int MorseTangle::open_component() const {
  if (!is_one_strand())
    throw Error(ErrorKind::NotOneStrand, "expected a tangle with one open strand, found " +
                                             std::to_string(bottom_.size() + top_.size()) + " endpoints");
  for (std::size_t k = 0; k < components_.size(); ++k)
    if (!components_[k].closed) return static_cast<int>(k);
  return -1;
}

MorseTangle MorseTangle::recolored(const std::map<ColorVar, ColorVar>& map) const {
  auto m = [&](const ColorVar& c) {
    auto it = map.find(c);
    return it == map.end() ? c : it->second;
  };
  auto bottom = bottom_;
  for (auto& e : bottom) e.color = m(e.color);
  auto slices = slices_;
  std::vector<Endpoint> top = top_;
  for (auto& e : top) e.color = m(e.color);
  for (std::size_t h = 0; h < slices.size(); ++h) {
    auto& s = slices[h];
    if (s.kind == SliceKind::Cup) s.color = m(components_[at(slice_component_[h])].color);
  }
  return make(std::move(bottom), std::move(slices), std::move(top));
}

HalfInteger rotation_number(const MorseTangle& t, const ColorVar& c) {
  HalfInteger r;
  bool found = false;
  for (const auto& comp : t.components())
    if (comp.color == c) {
      found = true;
      r.twice += comp.rotation_twice;
    }
  if (!found) throw Error(ErrorKind::UnknownColor, "color " + c.id + " does not occur in the tangle");
  return r;
}

HalfInteger turning_number(const MorseTangle& t) {
  HalfInteger r;
  for (const auto& comp : t.components()) r.twice += comp.rotation_twice;
  return r;
}

// ------------------------------------------------------------ braids

MorseTangle braid_tangle(const std::vector<ColorVar>& colors, const std::vector<std::pair<int, int>>& word) {
  std::vector<Endpoint> bottom;
  for (const auto& c : colors) bottom.push_back({c, Orientation::Up});
  std::vector<Slice> slices;
  for (const auto& [i, s] : word) slices.push_back(Slice::cross(i, s));
  return MorseTangle::make(std::move(bottom), std::move(slices));
}

MorseTangle braid_closure(const std::vector<ColorVar>& colors, const std::vector<std::pair<int, int>>& word) {
  const int n = static_cast<int>(colors.size());
  if (n == 0) throw Error(ErrorKind::WidthError, "braid closure needs at least one strand");
  std::vector<Slice> slices;
  for (int k = 1; k < n; ++k) slices.push_back(Slice::cup(k, Turn::Cw, colors[at(k)]));
  for (const auto& [i, s] : word) {
    if (i < 0 || i + 1 >= n)
      throw Error(ErrorKind::WidthError, "generator s" + std::to_string(i + 1) + " on " + std::to_string(n) + " strands");
    slices.push_back(Slice::cross(i, s));
  }
  for (int k = n - 1; k >= 1; --k) slices.push_back(Slice::cap(k));
  return MorseTangle::make({{colors[0], Orientation::Up}}, std::move(slices));
}

// ------------------------------------------------------------ slice grammar

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

Error syntax(int line, const std::string& why) {
  return Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + why);
}

bool valid_id(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Endpoint parse_endpoint(const std::string& tok, int line) {
  static const std::string up_arrow = "\xE2\x86\x91", down_arrow = "\xE2\x86\x93";
  std::string id;
  Orientation o;
  auto ends = [&](const std::string& suf) { return tok.size() > suf.size() && tok.compare(tok.size() - suf.size(), suf.size(), suf) == 0; };
  if (ends(up_arrow)) {
    id = tok.substr(0, tok.size() - up_arrow.size());
    o = Orientation::Up;
  } else if (ends(down_arrow)) {
    id = tok.substr(0, tok.size() - down_arrow.size());
    o = Orientation::Down;
  } else if (ends("^")) {
    id = tok.substr(0, tok.size() - 1);
    o = Orientation::Up;
  } else if (ends("v")) {
    id = tok.substr(0, tok.size() - 1);
    o = Orientation::Down;
  } else {
    throw syntax(line, "endpoint '" + tok + "' must end in ^ or v");
  }
  if (!valid_id(id)) throw syntax(line, "bad color id in '" + tok + "'");
  return {ColorVar(id), o};
}

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw syntax(line, "expected an integer, got '" + tok + "'");
  }
}

std::vector<std::pair<int, int>> parse_word(const std::vector<std::string>& toks, std::size_t from, int line) {
  std::vector<std::pair<int, int>> word;
  for (std::size_t k = from; k < toks.size(); ++k) {
    const std::string& g = toks[k];
    if (g.size() < 2 || g[0] != 's') throw syntax(line, "bad generator '" + g + "'");
    auto caret = g.find('^');
    int i = parse_int(g.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), line);
    int power = caret == std::string::npos ? 1 : parse_int(g.substr(caret + 1), line);
    if (i < 1 || power == 0) throw syntax(line, "bad generator '" + g + "'");
    for (int r = 0; r < std::abs(power); ++r) word.push_back({i - 1, power > 0 ? 1 : -1});
  }
  return word;
}

}  // namespace

MorseTangle parse_tangle(std::string_view text) {
  std::optional<std::vector<ColorVar>> declared;
  std::optional<std::vector<Endpoint>> bottom, top;
  std::vector<Slice> slices;
  std::optional<MorseTangle> shorthand;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head == "colors:") {
      if (declared) throw syntax(line, "colors declared twice");
      declared.emplace();
      for (std::size_t k = 1; k < toks.size(); ++k) {
        if (!valid_id(toks[k])) throw syntax(line, "bad color id '" + toks[k] + "'");
        declared->push_back(ColorVar(toks[k]));
      }
    } else if (head == "bottom:" || head == "top:") {
      auto& slot = head == "bottom:" ? bottom : top;
      if (slot) throw syntax(line, head + " given twice");
      slot.emplace();
      for (std::size_t k = 1; k < toks.size(); ++k) slot->push_back(parse_endpoint(toks[k], line));
    } else if (head == "cup" || head == "cap") {
      if (toks.size() < 2 || toks.size() > 4) throw syntax(line, "expected '" + head + " <position> [cw|ccw]'");
      int pos = parse_int(toks[1], line) - 1;
      std::optional<Turn> turn;
      std::optional<ColorVar> color;
      if (toks.size() >= 3) {
        if (toks[2] == "cw") turn = Turn::Cw;
        else if (toks[2] == "ccw") turn = Turn::Ccw;
        else throw syntax(line, "expected cw or ccw, got '" + toks[2] + "'");
      }
      if (toks.size() == 4) {
        if (head == "cap") throw syntax(line, "caps take no color");
        if (!valid_id(toks[3])) throw syntax(line, "bad color id '" + toks[3] + "'");
        color = ColorVar(toks[3]);
      }
      if (head == "cup") {
        if (!turn) throw syntax(line, "cup needs a turn (cw or ccw)");
        slices.push_back(Slice::cup(pos, *turn, color));
      } else {
        slices.push_back(Slice::cap(pos, turn));
      }
    } else if (head == "x+" || head == "x-") {
      if (toks.size() != 2) throw syntax(line, "expected '" + head + " <position>'");
      slices.push_back(Slice::cross(parse_int(toks[1], line) - 1, head == "x+" ? 1 : -1));
    } else if (head == "braid" || head == "closure") {
      if (shorthand) throw syntax(line, "only one braid or closure line is allowed");
      if (toks.size() < 2 || toks[1].empty() || toks[1].back() != ':') throw syntax(line, "expected '" + head + " <n>: word'");
      int n = parse_int(toks[1].substr(0, toks[1].size() - 1), line);
      if (n < 1) throw syntax(line, "braid needs at least one strand");
      if (!declared || declared->empty()) throw Error(ErrorKind::ColorError, "line " + std::to_string(line) + ": braid shorthand needs a colors: line");
      std::vector<ColorVar> cols;
      if (static_cast<int>(declared->size()) == n) cols = *declared;
      else if (declared->size() == 1) cols.assign(at(n), declared->front());
      else throw Error(ErrorKind::ColorError, "line " + std::to_string(line) + ": braid on " + std::to_string(n) +
                                                  " strands needs 1 or " + std::to_string(n) + " colors");
      auto word = parse_word(toks, 2, line);
      for (const auto& [i, s] : word)
        if (i + 1 >= n) throw Error(ErrorKind::WidthError, "line " + std::to_string(line) + ": generator s" + std::to_string(i + 1) + " on " + std::to_string(n) + " strands");
      shorthand = head == "braid" ? braid_tangle(cols, word) : braid_closure(cols, word);
    } else {
      throw syntax(line, "unknown directive '" + head + "'");
    }
  }

  MorseTangle t;
  if (shorthand) {
    if (bottom || !slices.empty()) throw Error(ErrorKind::SyntaxError, "braid shorthand cannot be mixed with slices");
    t = *shorthand;
    if (top) t = MorseTangle::make(t.bottom(), t.slices(), top);
  } else {
    t = MorseTangle::make(bottom.value_or(std::vector<Endpoint>{}), std::move(slices), top);
  }
  if (declared) {
    std::set<ColorVar> ok(declared->begin(), declared->end());
    for (const auto& c : t.colors())
      if (!ok.count(c)) throw Error(ErrorKind::ColorError, "color " + c.id + " is used but not declared");
  }
  return t;
}

std::string print_tangle(const MorseTangle& t) {
  std::ostringstream os;
  os << "colors:";
  for (const auto& c : t.colors()) os << ' ' << c.id;
  auto endpoints = [&](const char* head, const std::vector<Endpoint>& es) {
    os << '\n' << head;
    for (const auto& e : es) os << ' ' << e.color.id << (e.orientation == Orientation::Up ? '^' : 'v');
  };
  endpoints("bottom:", t.bottom());
  for (const auto& s : t.slices()) {
    os << '\n';
    switch (s.kind) {
      case SliceKind::Cup:
        os << "cup " << s.position + 1 << (*s.turn == Turn::Cw ? " cw" : " ccw");
        if (s.color) os << ' ' << s.color->id;
        break;
      case SliceKind::Cap:
        os << "cap " << s.position + 1;
        if (s.turn) os << (*s.turn == Turn::Cw ? " cw" : " ccw");
        break;
      case SliceKind::Cross:
        os << (s.sign > 0 ? "x+ " : "x- ") << s.position + 1;
        break;
    }
  }
  endpoints("top:", t.top());
  os << '\n';
  return os.str();
}

// ------------------------------------------------------------ PD codes

ColoredPDCode parse_pd(std::string_view text) {
  ColoredPDCode pd;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  auto read_label = [&](const std::string& s) { return parse_int(s, line); };
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    if (toks[0] == "edgecolors:") {
      for (std::size_t k = 1; k < toks.size(); ++k) {
        std::string tok = toks[k];
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw syntax(line, "expected edge=color, got '" + tok + "'");
        int e = read_label(tok.substr(0, eq));
        std::string id = tok.substr(eq + 1);
        if (!valid_id(id)) throw syntax(line, "bad color id '" + id + "'");
        if (!pd.edge_colors.emplace(e, ColorVar(id)).second) throw syntax(line, "edge " + std::to_string(e) + " colored twice");
      }
      continue;
    }
    if (toks[0] == "cut:") {
      if (toks.size() != 2 || pd.cut) throw syntax(line, "expected 'cut: <edge>'");
      pd.cut = read_label(toks[1]);
      continue;
    }
    // Crossing and loop tokens; commas and a PD[...] wrapper are tolerated.
    std::string s = raw;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',' || s[i] == ']')) ++i;
    };
    while (true) {
      skip();
      if (i >= s.size()) break;
      if (s.compare(i, 3, "PD[") == 0) {
        i += 3;
        continue;
      }
      if (s.compare(i, 2, "X[") == 0 || s.compare(i, 2, "O[") == 0) {
        const bool loop = s[i] == 'O';
        auto close = s.find(']', i);
        if (close == std::string::npos) throw syntax(line, "unterminated bracket");
        std::vector<int> labels;
        std::string body = s.substr(i + 2, close - i - 2);
        std::replace(body.begin(), body.end(), ',', ' ');
        for (const auto& tok : split_ws(body)) labels.push_back(read_label(tok));
        i = close + 1;
        if (loop) {
          if (labels.size() != 1) throw syntax(line, "O[...] takes one edge label");
          pd.loops.push_back(labels[0]);
          continue;
        }
        if (labels.size() != 4) throw syntax(line, "X[...] takes four edge labels");
        PDCrossing c;
        std::copy(labels.begin(), labels.end(), c.legs.begin());
        // optional sign=+ / sign=-
        std::size_t j = i;
        while (j < s.size() && (std::isspace(static_cast<unsigned char>(s[j])) || s[j] == ',')) ++j;
        if (s.compare(j, 5, "sign=") == 0) {
          j += 5;
          std::size_t k = j;
          while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k])) && s[k] != ',') ++k;
          std::string v = s.substr(j, k - j);
          if (v == "+" || v == "+1" || v == "1") c.sign = 1;
          else if (v == "-" || v == "-1") c.sign = -1;
          else throw syntax(line, "bad sign '" + v + "'");
          i = k;
        }
        pd.crossings.push_back(c);
        continue;
      }
      throw syntax(line, "unexpected text '" + s.substr(i, 12) + "'");
    }
  }
  return pd;
}

std::string print_pd(const ColoredPDCode& pd) {
  std::ostringstream os;
  for (const auto& c : pd.crossings) {
    os << "X[" << c.legs[0] << ',' << c.legs[1] << ',' << c.legs[2] << ',' << c.legs[3] << ']';
    if (c.sign) os << " sign=" << (*c.sign > 0 ? '+' : '-');
    os << '\n';
  }
  for (int e : pd.loops) os << "O[" << e << "]\n";
  if (!pd.edge_colors.empty()) {
    os << "edgecolors:";
    for (const auto& [e, c] : pd.edge_colors) os << ' ' << e << '=' << c.id;
    os << '\n';
  }
  if (pd.cut) os << "cut: " << *pd.cut << '\n';
  return os.str();
}

OrientedPD orient(const ColoredPDCode& pd) {
  OrientedPD out;
  const int n = static_cast<int>(pd.crossings.size());
  std::map<int, std::vector<OrientedPD::Leg>> occ;
  for (int c = 0; c < n; ++c)
    for (int l = 0; l < 4; ++l) occ[pd.crossings[at(c)].legs[at(l)]].push_back({c, l});
  for (const auto& [e, v] : occ)
    if (v.size() != 2)
      throw Error(ErrorKind::Malformed, "edge " + std::to_string(e) + " is used " + std::to_string(v.size()) +
                                            (v.size() == 1 ? " time" : " times"));
  std::set<int> loop_set;
  for (int e : pd.loops) {
    if (occ.count(e) || !loop_set.insert(e).second)
      throw Error(ErrorKind::Malformed, "loop edge " + std::to_string(e) + " is used elsewhere");
  }

  // dir[c][l]: +1 outgoing, -1 incoming, 0 unknown.
  std::vector<std::array<int, 4>> dir(at(n), {-1, 0, 1, 0});
  std::vector<int> sign(at(n), 0);
  auto set_sign = [&](int c, int s) {
    sign[at(c)] = s;
    dir[at(c)][1] = s > 0 ? 1 : -1;
    dir[at(c)][3] = s > 0 ? -1 : 1;
  };
  for (int c = 0; c < n; ++c)
    if (pd.crossings[at(c)].sign) set_sign(c, *pd.crossings[at(c)].sign);
  auto other = [&](int c, int l) {
    const auto& v = occ[pd.crossings[at(c)].legs[at(l)]];
    return (v[0].crossing == c && v[0].leg == l) ? v[1] : v[0];
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (int c = 0; c < n; ++c) {
      if (sign[at(c)]) continue;
      for (int l : {1, 3}) {
        auto o = other(c, l);
        int d = dir[at(o.crossing)][at(o.leg)];
        if (!d) continue;
        int mine = -d;
        set_sign(c, (l == 1) == (mine > 0) ? 1 : -1);
        changed = true;
        break;
      }
    }
  }
  for (int c = 0; c < n; ++c)
    if (!sign[at(c)])
      throw Error(ErrorKind::Malformed, "cannot infer the sign of crossing " + std::to_string(c + 1) + "; give sign=");
  for (const auto& [e, v] : occ) {
    int d0 = dir[at(v[0].crossing)][at(v[0].leg)], d1 = dir[at(v[1].crossing)][at(v[1].leg)];
    if (d0 == d1) throw Error(ErrorKind::OrientationError, "edge " + std::to_string(e) + " has inconsistent orientation");
    out.tail[e] = d0 > 0 ? v[0] : v[1];
    out.head[e] = d0 > 0 ? v[1] : v[0];
  }

  // Components over edge labels.
  std::vector<int> labels;
  for (const auto& [e, v] : occ) labels.push_back(e);
  for (int e : pd.loops) labels.push_back(e);
  std::sort(labels.begin(), labels.end());
  std::map<int, int> index;
  for (int e : labels) index.emplace(e, static_cast<int>(index.size()));
  detail::UnionFind uf(static_cast<int>(labels.size()));
  for (int c = 0; c < n; ++c) {
    const auto& L = pd.crossings[at(c)].legs;
    OrientedPD::Crossing x;
    x.sign = sign[at(c)];
    x.legs = L;
    x.under_in = L[0];
    x.under_out = L[2];
    x.over_in = x.sign > 0 ? L[3] : L[1];
    x.over_out = x.sign > 0 ? L[1] : L[3];
    uf.unite(index[x.under_in], index[x.under_out]);
    uf.unite(index[x.over_in], index[x.over_out]);
    out.crossings.push_back(x);
  }
  out.loops = pd.loops;
  std::map<int, int> root_comp;
  for (int e : labels) {
    int r = uf.find(index[e]);
    auto [it, fresh] = root_comp.emplace(r, static_cast<int>(root_comp.size()));
    out.component[e] = it->second;
  }
  out.component_count = static_cast<int>(root_comp.size());
  std::vector<std::optional<ColorVar>> cc(at(out.component_count));
  for (const auto& [e, col] : pd.edge_colors) {
    auto it = out.component.find(e);
    if (it == out.component.end()) throw Error(ErrorKind::Malformed, "edgecolors names unknown edge " + std::to_string(e));
    auto& slot = cc[at(it->second)];
    if (slot && *slot != col)
      throw Error(ErrorKind::ColorError, "edge " + std::to_string(e) + " is colored " + col.id + " but its component is " + slot->id);
    slot = col;
  }
  for (int e : labels) {
    const auto& slot = cc[at(out.component[e])];
    if (!slot) throw Error(ErrorKind::ColorError, "the component through edge " + std::to_string(e) + " has no color");
    out.color[e] = *slot;
  }
  return out;
}

namespace {

// Local box around one crossing with some legs bent so that a chosen
// counterclockwise run of legs enters from below.  Legs are numbered 0..3 as
// BL, BR, TR, TL of the upward crossing; lists hold unwrapped indices.
struct Box {
  std::vector<Slice> slices;
  std::deque<int> bottom;
  std::deque<int> top;
};

int wrap4(int x) { return ((x % 4) + 4) % 4; }
bool incoming(int c) { return wrap4(c) < 2; }

std::optional<Box> bend(int sign, int start, int count, const std::array<ColorVar, 4>& colors) {
  Box b;
  b.slices.push_back(Slice::cross(0, sign));
  int L = 0, R = 1;
  const int S = start, E = start + count - 1;
  auto shift = [&](int by) {
    for (auto& s : b.slices) s.position += by;
  };
  for (int guard = 0; guard < 16; ++guard) {
    if (L == S && R == E) {
      for (int x = L; x <= R; ++x) b.bottom.push_back(x);
      for (int x = L + 3; x >= R + 1; --x) b.top.push_back(x);
      return b;
    }
    const int len = R - L + 1;
    if (R < E && len + 1 <= 4) {
      // bend the top-right leg down on the right
      const int top_width = 4 - len;
      b.slices.push_back(Slice::cap(top_width - 1));
      ++R;
    } else if (L > S && len + 1 <= 4) {
      shift(1);
      b.slices.push_back(Slice::cap(0));
      --L;
    } else if (L < S && len >= 2) {
      shift(1);
      b.slices.insert(b.slices.begin(), Slice::cup(0, incoming(L) ? Turn::Ccw : Turn::Cw, colors[at(wrap4(L))]));
      ++L;
    } else if (R > E && len >= 2) {
      b.slices.insert(b.slices.begin(), Slice::cup(len - 1, incoming(R) ? Turn::Cw : Turn::Ccw, colors[at(wrap4(R))]));
      --R;
    } else {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Box best_box(int sign, int s, int m, const std::array<ColorVar, 4>& colors) {
  std::optional<Box> best;
  for (int S : {s - 4, s, s + 4}) {
    auto b = bend(sign, S, m, colors);
    if (b && (!best || b->slices.size() < best->slices.size())) best = std::move(b);
  }
  if (!best) throw Error(ErrorKind::Malformed, "internal: no leg bending for run " + std::to_string(s) + "+" + std::to_string(m));
  return *best;
}

}  // namespace

MorseTangle pd_to_morse(const ColoredPDCode& pd, std::optional<int> cut_arg) {
  const OrientedPD o = orient(pd);
  const std::optional<int> cut = cut_arg ? cut_arg : pd.cut;
  const int n = static_cast<int>(o.crossings.size());
  if (cut && !o.color.count(*cut)) throw Error(ErrorKind::Malformed, "cut edge " + std::to_string(*cut) + " is not in the diagram");

  struct Item {
    int edge;
    int crossing;  // -1: runs to the top boundary
    int leg;
    Orientation dir;
  };
  std::vector<Item> frontier;
  std::vector<Slice> slices;
  std::vector<Endpoint> bottom;
  std::vector<char> done(at(n), 0);
  const bool cut_is_loop = cut && std::find(o.loops.begin(), o.loops.end(), *cut) != o.loops.end();

  if (cut) {
    bottom.push_back({o.color.at(*cut), Orientation::Up});
    if (cut_is_loop) frontier.push_back({*cut, -1, -1, Orientation::Up});
    else frontier.push_back({*cut, o.head.at(*cut).crossing, o.head.at(*cut).leg, Orientation::Up});
  }

  // Item for the piece of edge e leaving crossing c at leg l.
  auto item_from = [&](int c, int l) -> Item {
    const int e = o.crossings[at(c)].legs[at(l)];
    const bool out = o.tail.at(e).crossing == c && o.tail.at(e).leg == l;
    if (cut && e == *cut && out) return {e, -1, -1, Orientation::Up};
    const auto& far = out ? o.head.at(e) : o.tail.at(e);
    return {e, far.crossing, far.leg, out ? Orientation::Up : Orientation::Down};
  };
  auto cap_pairs = [&] {
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i + 1 < frontier.size(); ++i) {
        const Item& a = frontier[i];
        const Item& b = frontier[i + 1];
        if (a.edge == b.edge && a.crossing >= 0 && b.crossing >= 0 && done[at(a.crossing)] && done[at(b.crossing)]) {
          slices.push_back(Slice::cap(static_cast<int>(i)));
          frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i), frontier.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          again = true;
          break;
        }
      }
    }
  };

  // Two adjacent strands reaching one crossing in clockwise order: the other
  // two legs lead into a piece of the diagram hanging between them.  Open it
  // with a cup on the first of those legs.
  auto open_hanging = [&] {
    for (std::size_t i = 0; i + 1 < frontier.size(); ++i) {
      const Item& l = frontier[i];
      const Item& r = frontier[i + 1];
      if (l.crossing < 0 || l.crossing != r.crossing || wrap4(r.leg - l.leg) != 3) continue;
      const int c = l.crossing;
      const int leg = wrap4(l.leg + 1);
      const int e = o.crossings[at(c)].legs[at(leg)];
      if (cut && e == *cut) continue;
      const auto& h = o.head.at(e);
      const auto& tl = o.tail.at(e);
      const bool into = h.crossing == c && h.leg == leg;
      const auto& far = into ? tl : h;
      Item near_item{e, c, leg, into ? Orientation::Up : Orientation::Down};
      Item far_item{e, far.crossing, far.leg, into ? Orientation::Down : Orientation::Up};
      slices.push_back(Slice::cup(static_cast<int>(i) + 1, into ? Turn::Cw : Turn::Ccw, o.color.at(e)));
      frontier.insert(frontier.begin() + static_cast<std::ptrdiff_t>(i) + 1, {near_item, far_item});
      return;
    }
  };

  for (int placed = 0; placed < n;) {
    open_hanging();
    // Candidate crossings: all their frontier legs adjacent, in counterclockwise order.
    int best = -1, best_pos = 0, best_len = 0;
    for (std::size_t i = 0; i < frontier.size();) {
      const int c = frontier[i].crossing;
      if (c < 0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      bool ok = true;
      while (j < frontier.size() && frontier[j].crossing == c) {
        if (j > i && wrap4(frontier[j].leg - frontier[j - 1].leg) != 1) ok = false;
        ++j;
      }
      const int len = static_cast<int>(j - i);
      const int total = static_cast<int>(std::count_if(frontier.begin(), frontier.end(), [&](const Item& it) { return it.crossing == c; }));
      if (ok && total == len && len > best_len) {
        best = c;
        best_pos = static_cast<int>(i);
        best_len = len;
      }
      i = j;
    }
    if (best < 0) {
      if (std::any_of(frontier.begin(), frontier.end(), [](const Item& it) { return it.crossing >= 0; }))
        throw Error(ErrorKind::Malformed, "the PD code is not planar (no crossing can be placed)");
      // Start a new piece of the diagram with a cup on an edge of the first unplaced crossing.
      int c = 0;
      while (done[at(c)]) ++c;
      const int e = o.crossings[at(c)].under_in;
      const auto& h = o.head.at(e);
      const auto& tl = o.tail.at(e);
      Item up{e, h.crossing, h.leg, Orientation::Up}, down{e, tl.crossing, tl.leg, Orientation::Down};
      const bool swap = h.crossing == tl.crossing && wrap4(h.leg - tl.leg) == 1;
      slices.push_back(Slice::cup(static_cast<int>(frontier.size()), swap ? Turn::Ccw : Turn::Cw, o.color.at(e)));
      frontier.push_back(swap ? down : up);
      frontier.push_back(swap ? up : down);
      if (cut && e == *cut) throw Error(ErrorKind::Malformed, "internal: cut edge reached by a cup");
      continue;
    }
    const auto& x = o.crossings[at(best)];
    const int first_leg = frontier[at(best_pos)].leg;
    auto to_c = [&](int leg) { return x.sign > 0 ? wrap4(leg + 1) : leg; };
    auto to_leg = [&](int c) { return x.sign > 0 ? wrap4(c - 1) : wrap4(c); };
    std::array<ColorVar, 4> colors;
    for (int c = 0; c < 4; ++c) colors[at(c)] = o.color.at(x.legs[at(to_leg(c))]);
    Box box = best_box(x.sign, to_c(first_leg), best_len, colors);
    for (auto s : box.slices) {
      s.position += best_pos;
      slices.push_back(s);
    }
    done[at(best)] = 1;
    ++placed;
    std::vector<Item> fresh;
    for (int c : box.top) fresh.push_back(item_from(best, to_leg(wrap4(c))));
    frontier.erase(frontier.begin() + best_pos, frontier.begin() + best_pos + best_len);
    frontier.insert(frontier.begin() + best_pos, fresh.begin(), fresh.end());
    cap_pairs();
  }
  for (int e : o.loops) {
    if (cut_is_loop && e == *cut) continue;
    const int w = static_cast<int>(frontier.size());
    slices.push_back(Slice::cup(w, Turn::Ccw, o.color.at(e)));
    slices.push_back(Slice::cap(w));
  }
  return MorseTangle::make(std::move(bottom), std::move(slices));
}

ColoredPDCode morse_to_pd(const MorseTangle& t) {
  const int h_count = static_cast<int>(t.slices().size());
  std::vector<int> offset{0};
  for (int h = 0; h <= h_count; ++h) offset.push_back(offset.back() + t.width_at(h));
  detail::UnionFind uf(offset.back());
  for (int h = 0; h < h_count; ++h) {
    const Slice& s = t.slices()[at(h)];
    const int w = t.width_at(h), off = offset[at(h)], up = offset[at(h + 1)], p = s.position;
    for (int i = 0; i < w; ++i) {
      switch (s.kind) {
        case SliceKind::Cup:
          uf.unite(off + i, up + (i < p ? i : i + 2));
          break;
        case SliceKind::Cap:
          if (i < p) uf.unite(off + i, up + i);
          else if (i >= p + 2) uf.unite(off + i, up + i - 2);
          break;
        case SliceKind::Cross:
          if (i != p && i != p + 1) uf.unite(off + i, up + i);
          break;
      }
    }
    if (s.kind == SliceKind::Cup) uf.unite(up + p, up + p + 1);
    if (s.kind == SliceKind::Cap) uf.unite(off + p, off + p + 1);
  }
  const auto& bot = t.bottom();
  const auto& top = t.top();
  if (bot.size() != top.size())
    throw Error(ErrorKind::Malformed, "cannot close a tangle with " + std::to_string(bot.size()) + " bottom and " +
                                          std::to_string(top.size()) + " top endpoints");
  for (std::size_t i = 0; i < bot.size(); ++i) {
    if (bot[i].orientation != top[i].orientation)
      throw Error(ErrorKind::OrientationError, "bottom and top endpoint " + std::to_string(i + 1) + " disagree");
    uf.unite(static_cast<int>(i), offset[at(h_count)] + static_cast<int>(i));
  }

  std::map<int, int> label;
  auto edge = [&](int node) {
    auto [it, fresh] = label.emplace(uf.find(node), static_cast<int>(label.size()) + 1);
    return it->second;
  };
  ColoredPDCode pd;
  std::set<int> crossed;
  for (int h = 0; h < h_count; ++h) {
    const Slice& s = t.slices()[at(h)];
    if (s.kind != SliceKind::Cross) continue;
    const int p = s.position;
    int bl = edge(offset[at(h)] + p), br = edge(offset[at(h)] + p + 1);
    int tr = edge(offset[at(h + 1)] + p + 1), tl = edge(offset[at(h + 1)] + p);
    PDCrossing c;
    c.legs = s.sign > 0 ? std::array<int, 4>{br, tr, tl, bl} : std::array<int, 4>{bl, br, tr, tl};
    c.sign = s.sign;
    pd.crossings.push_back(c);
    for (int e : c.legs) crossed.insert(e);
  }
  for (int h = 0; h <= h_count; ++h)
    for (int i = 0; i < t.width_at(h); ++i) {
      int e = edge(offset[at(h)] + i);
      pd.edge_colors.emplace(e, t.color_at(h, i));
      if (!crossed.count(e) && std::find(pd.loops.begin(), pd.loops.end(), e) == pd.loops.end()) pd.loops.push_back(e);
    }
  if (!bot.empty()) pd.cut = edge(0);
  if (bot.size() > 1) pd.cut.reset();
  return pd;
}

// ------------------------------------------------------------ moves

namespace {

std::vector<Slice> spliced(const MorseTangle& t, int at_level, int erase, const std::vector<Slice>& ins) {
  std::vector<Slice> s = t.slices();
  s.erase(s.begin() + at_level, s.begin() + at_level + erase);
  s.insert(s.begin() + at_level, ins.begin(), ins.end());
  return s;
}

bool upward(const MorseTangle& t, int level, int pos) {
  return level >= 0 && level < t.levels() && pos >= 0 && pos < t.width_at(level) &&
         t.orientation_at(level, pos) == Orientation::Up;
}

// Position p of an R3 pattern starting at slice h, or -1.
int r3_pattern(const MorseTangle& t, int h, int p) {
  const auto& s = t.slices();
  if (h < 0 || h + 3 > static_cast<int>(s.size())) return -1;
  for (int k = 0; k < 3; ++k)
    if (s[at(h + k)].kind != SliceKind::Cross) return -1;
  const int a = s[at(h)].sign, b = s[at(h + 1)].sign, c = s[at(h + 2)].sign;
  if (a == c && a != b) return -1;
  if (s[at(h)].position == p && s[at(h + 1)].position == p + 1 && s[at(h + 2)].position == p) return 0;
  if (s[at(h)].position == p + 1 && s[at(h + 1)].position == p && s[at(h + 2)].position == p + 1) return 1;
  return -1;
}

}  // namespace

MorseTangle insert_move(const MorseTangle& t, MoveKind kind, const MoveSite& site) {
  const int h = site.level, p = site.position;
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::BadSite, why + " at " + pos_text(h, p));
  };
  switch (kind) {
    case MoveKind::R2: {
      if (site.variant < 0 || site.variant > 1) throw bad("R2 variant must be 0 or 1");
      if (!upward(t, h, p) || !upward(t, h, p + 1)) throw bad("R2 needs two upward strands");
      const int first = site.variant == 0 ? 1 : -1;
      return MorseTangle::make(t.bottom(), spliced(t, h, 0, {Slice::cross(p, first), Slice::cross(p, -first)}), t.top());
    }
    case MoveKind::Curl: {
      if (site.variant < 0 || site.variant > 3) throw bad("curl variant must be 0..3");
      if (!upward(t, h, p)) throw bad("curl needs an upward strand");
      const int sign = (site.variant & 1) ? -1 : 1;
      const ColorVar& c = t.color_at(h, p);
      std::vector<Slice> ins;
      if (site.variant & 2) ins = {Slice::cup(p, Turn::Ccw, c), Slice::cross(p + 1, sign), Slice::cap(p)};
      else ins = {Slice::cup(p + 1, Turn::Cw, c), Slice::cross(p, sign), Slice::cap(p + 1)};
      return MorseTangle::make(t.bottom(), spliced(t, h, 0, ins), t.top());
    }
    case MoveKind::R3: {
      const int pattern = r3_pattern(t, h, p);
      if (pattern < 0) throw bad("no R3 configuration");
      const auto& s = t.slices();
      const int a = s[at(h)].sign, b = s[at(h + 1)].sign, c = s[at(h + 2)].sign;
      const int lo = pattern == 0 ? p + 1 : p, hi = pattern == 0 ? p : p + 1;
      return MorseTangle::make(t.bottom(), spliced(t, h, 3, {Slice::cross(lo, c), Slice::cross(hi, b), Slice::cross(lo, a)}),
                               t.top());
    }
  }
  throw bad("unknown move");
}

std::vector<MoveSite> move_sites(const MorseTangle& t, MoveKind kind) {
  std::vector<MoveSite> out;
  for (int h = 0; h < t.levels(); ++h)
    for (int p = 0; p < t.width_at(h); ++p) {
      switch (kind) {
        case MoveKind::R2:
          if (upward(t, h, p) && upward(t, h, p + 1))
            for (int v = 0; v < 2; ++v) out.push_back({h, p, v});
          break;
        case MoveKind::Curl:
          if (upward(t, h, p))
            for (int v = 0; v < 4; ++v) out.push_back({h, p, v});
          break;
        case MoveKind::R3:
          if (r3_pattern(t, h, p) >= 0) out.push_back({h, p, 0});
          break;
      }
    }
  return out;
}

}  // namespace mvalex
