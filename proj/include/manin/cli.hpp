#pragma once

// JSON input specs (schema_version 1), their parser/serializer, and the
// command runner behind the manin command-line tool.
//
// Input document:
//   {
//     "schema_version": 1,
//     "algebra": {"labels": [...], "brackets": [{"x": i, "y": j, "result": [q...]}],
//                 "form": [[q...]...]},
//     "rep":     {"block_shapes": [n...], "images": [[block...]...]},
//     "triple":  {"gplus": [[q...]...], "gminus": [[q...]...]},
//     "points":  [[block...]...],
//     "sections": [{"d": [block...], "q": [[q...]...], "variant": "drinfeld",
//                   "points": [[block...]...],
//                   "group_data": {"nilpotent": [[q...]...], "toral": [[block...]...]}}],
//     "splitting": {"q": [[q...]...], "variant": "heisenberg",
//                   "cells": [["B+","B+"], null],
//                   "reps": [{"label": "e", "d": [block...], "group_data": {...}}]}
//   }
// Rationals are strings "p" or "p/q". Brackets not listed are zero; [y, x] is
// filled in by antisymmetry. Unknown keys are errors unless parsing is lenient.

#include "manin/flagapps.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <sstream>

namespace manin {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Input problem located by a JSON pointer.
class input_error : public std::runtime_error {
 public:
  input_error(std::string pointer, const std::string& msg)
      : std::runtime_error(msg + " at " + (pointer.empty() ? "/" : pointer)), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct GroupDataSpec {
  std::vector<Vec> nilpotent;
  std::vector<std::vector<Mat>> toral;
  friend bool operator==(const GroupDataSpec&, const GroupDataSpec&) = default;
};

struct SectionInput {
  std::vector<Mat> d;
  std::vector<Vec> q;
  Variant variant = Variant::Drinfeld;
  std::vector<std::vector<Mat>> points;
  std::optional<GroupDataSpec> group_data;
  friend bool operator==(const SectionInput&, const SectionInput&) = default;
};

struct RepInput {
  std::string label;
  std::vector<Mat> d;
  std::optional<GroupDataSpec> group_data;
  friend bool operator==(const RepInput&, const RepInput&) = default;
};

struct SplittingInput {
  std::vector<Vec> q;
  Variant variant = Variant::Drinfeld;
  CellSpec cells;
  std::vector<RepInput> reps;
  friend bool operator==(const SplittingInput&, const SplittingInput&) = default;
};

struct InputSpec {
  LieAlg algebra;
  Mat form;
  std::optional<std::vector<std::size_t>> block_shapes;
  std::vector<std::vector<Mat>> rep_images;  // per basis vector, per block
  std::optional<std::pair<std::vector<Vec>, std::vector<Vec>>> triple;
  std::vector<std::vector<Mat>> points;
  std::vector<SectionInput> sections;
  std::optional<SplittingInput> splitting;
  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

namespace detail {

class Reader {
 public:
  explicit Reader(bool strict) : strict_(strict) {}

  const json& field(const json& obj, const std::string& ptr, const char* key) const {
    if (!obj.contains(key)) throw input_error(ptr + "/" + key, "missing required field");
    return obj.at(key);
  }

  void object(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) throw input_error(ptr, "expected an object");
    if (!strict_) return;
    for (const auto& [k, _] : j.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw input_error(ptr + "/" + escape(k), "unknown field '" + k + "'");
    }
  }

  const json& array(const json& j, const std::string& ptr) const {
    if (!j.is_array()) throw input_error(ptr, "expected an array");
    return j;
  }

  Rat rational(const json& j, const std::string& ptr) const {
    if (!j.is_string()) throw input_error(ptr, "expected a rational string \"p/q\"");
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw input_error(ptr, e.what());
    }
  }

  std::size_t count(const json& j, const std::string& ptr) const {
    if (!j.is_number_unsigned()) throw input_error(ptr, "expected a non-negative integer");
    return j.get<std::size_t>();
  }

  Vec vec(const json& j, const std::string& ptr, std::size_t len) const {
    array(j, ptr);
    if (j.size() != len)
      throw input_error(ptr, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
    Vec v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = rational(j[i], ptr + "/" + std::to_string(i));
    return v;
  }

  std::vector<Vec> vecs(const json& j, const std::string& ptr, std::size_t len) const {
    array(j, ptr);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec(j[i], ptr + "/" + std::to_string(i), len));
    return out;
  }

  Mat square(const json& j, const std::string& ptr, std::size_t n) const {
    array(j, ptr);
    if (j.size() != n) throw input_error(ptr, "expected " + std::to_string(n) + " rows");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(vec(j[i], ptr + "/" + std::to_string(i), n));
    return Mat::from_rows(rows, n);
  }

  std::vector<Mat> blocks(const json& j, const std::string& ptr, const std::vector<std::size_t>& shapes) const {
    array(j, ptr);
    if (j.size() != shapes.size())
      throw input_error(ptr, "expected " + std::to_string(shapes.size()) + " blocks");
    std::vector<Mat> out;
    for (std::size_t b = 0; b < shapes.size(); ++b)
      out.push_back(square(j[b], ptr + "/" + std::to_string(b), shapes[b]));
    return out;
  }

  Variant variant(const json& j, const std::string& ptr) const {
    if (!j.is_string()) throw input_error(ptr, "expected \"drinfeld\" or \"heisenberg\"");
    try {
      return parse_variant(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw input_error(ptr, e.what());
    }
  }

  static std::string escape(const std::string& k) {
    std::string out;
    for (char c : k) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

 private:
  bool strict_;
};

inline json rat_json(const Rat& r) { return to_string(r); }

inline json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

inline json vecs_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

inline json mat_json(const Mat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i)));
  return a;
}

inline json blocks_json(const std::vector<Mat>& bs) {
  json a = json::array();
  for (const auto& b : bs) a.push_back(mat_json(b));
  return a;
}

inline json group_data_json(const GroupDataSpec& g) {
  json t = json::array();
  for (const auto& bs : g.toral) t.push_back(blocks_json(bs));
  return json{{"nilpotent", vecs_json(g.nilpotent)}, {"toral", t}};
}

}  // namespace detail

inline InputSpec parse_input_spec(const json& doc, bool strict = true) {
  detail::Reader rd(strict);
  rd.object(doc, "", {"schema_version", "algebra", "rep", "triple", "points", "sections", "splitting"});
  const json& ver = rd.field(doc, "", "schema_version");
  if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion)
    throw input_error("/schema_version", "unsupported schema version (expected 1)");

  InputSpec spec;
  const json& alg = rd.field(doc, "", "algebra");
  rd.object(alg, "/algebra", {"labels", "brackets", "form"});
  const json& labels = rd.array(rd.field(alg, "/algebra", "labels"), "/algebra/labels");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) throw input_error("/algebra/labels/" + std::to_string(i), "expected a string");
    names.push_back(labels[i].get<std::string>());
  }
  const std::size_t n = names.size();
  std::vector<Rat> c(n * n * n, Rat(0));
  std::vector<bool> seen(n * n, false);
  if (alg.contains("brackets")) {
    const json& br = rd.array(alg.at("brackets"), "/algebra/brackets");
    for (std::size_t e = 0; e < br.size(); ++e) {
      const std::string ptr = "/algebra/brackets/" + std::to_string(e);
      rd.object(br[e], ptr, {"x", "y", "result"});
      std::size_t x = rd.count(rd.field(br[e], ptr, "x"), ptr + "/x");
      std::size_t y = rd.count(rd.field(br[e], ptr, "y"), ptr + "/y");
      if (x >= n) throw input_error(ptr + "/x", "basis index out of range");
      if (y >= n) throw input_error(ptr + "/y", "basis index out of range");
      if (x == y) throw input_error(ptr, "bracket of a basis vector with itself is zero by definition");
      if (seen[x * n + y]) throw input_error(ptr, "bracket listed twice");
      seen[x * n + y] = seen[y * n + x] = true;
      Vec r = rd.vec(rd.field(br[e], ptr, "result"), ptr + "/result", n);
      for (std::size_t k = 0; k < n; ++k) {
        c[(x * n + y) * n + k] = r[k];
        c[(y * n + x) * n + k] = -r[k];
      }
    }
  }
  spec.algebra = LieAlg(n, names, std::move(c));
  spec.form = rd.square(rd.field(alg, "/algebra", "form"), "/algebra/form", n);

  if (doc.contains("rep")) {
    const json& rj = doc.at("rep");
    rd.object(rj, "/rep", {"block_shapes", "images"});
    const json& sh = rd.array(rd.field(rj, "/rep", "block_shapes"), "/rep/block_shapes");
    std::vector<std::size_t> shapes;
    for (std::size_t b = 0; b < sh.size(); ++b) {
      std::size_t s = rd.count(sh[b], "/rep/block_shapes/" + std::to_string(b));
      if (s == 0) throw input_error("/rep/block_shapes/" + std::to_string(b), "block size must be positive");
      shapes.push_back(s);
    }
    const json& im = rd.array(rd.field(rj, "/rep", "images"), "/rep/images");
    if (im.size() != n) throw input_error("/rep/images", "expected one image per basis vector");
    for (std::size_t i = 0; i < n; ++i) spec.rep_images.push_back(rd.blocks(im[i], "/rep/images/" + std::to_string(i), shapes));
    spec.block_shapes = shapes;
  }

  if (doc.contains("triple")) {
    const json& tj = doc.at("triple");
    rd.object(tj, "/triple", {"gplus", "gminus"});
    spec.triple = std::pair{rd.vecs(rd.field(tj, "/triple", "gplus"), "/triple/gplus", n),
                            rd.vecs(rd.field(tj, "/triple", "gminus"), "/triple/gminus", n)};
  }

  auto need_rep = [&](const std::string& ptr) -> const std::vector<std::size_t>& {
    if (!spec.block_shapes) throw input_error(ptr, "group elements need a \"rep\" section");
    return *spec.block_shapes;
  };
  auto point_list = [&](const json& j, const std::string& ptr) {
    rd.array(j, ptr);
    const auto& shapes = need_rep(ptr);
    std::vector<std::vector<Mat>> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rd.blocks(j[i], ptr + "/" + std::to_string(i), shapes));
    return out;
  };
  auto group_data = [&](const json& j, const std::string& ptr) {
    rd.object(j, ptr, {"nilpotent", "toral"});
    GroupDataSpec g;
    if (j.contains("nilpotent")) g.nilpotent = rd.vecs(j.at("nilpotent"), ptr + "/nilpotent", n);
    if (j.contains("toral")) g.toral = point_list(j.at("toral"), ptr + "/toral");
    return g;
  };

  if (doc.contains("points")) spec.points = point_list(doc.at("points"), "/points");

  if (doc.contains("sections")) {
    const json& ss = rd.array(doc.at("sections"), "/sections");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const std::string ptr = "/sections/" + std::to_string(i);
      rd.object(ss[i], ptr, {"d", "q", "variant", "points", "group_data"});
      SectionInput si;
      si.d = rd.blocks(rd.field(ss[i], ptr, "d"), ptr + "/d", need_rep(ptr + "/d"));
      si.q = rd.vecs(rd.field(ss[i], ptr, "q"), ptr + "/q", n);
      si.variant = rd.variant(rd.field(ss[i], ptr, "variant"), ptr + "/variant");
      if (ss[i].contains("points")) si.points = point_list(ss[i].at("points"), ptr + "/points");
      if (ss[i].contains("group_data")) si.group_data = group_data(ss[i].at("group_data"), ptr + "/group_data");
      spec.sections.push_back(std::move(si));
    }
  }

  if (doc.contains("splitting")) {
    const json& sp = doc.at("splitting");
    const std::string ptr = "/splitting";
    rd.object(sp, ptr, {"q", "variant", "cells", "reps"});
    SplittingInput si;
    si.q = rd.vecs(rd.field(sp, ptr, "q"), ptr + "/q", n);
    si.variant = rd.variant(rd.field(sp, ptr, "variant"), ptr + "/variant");
    const auto& shapes = need_rep(ptr);
    const json& cells = rd.array(rd.field(sp, ptr, "cells"), ptr + "/cells");
    if (cells.size() != shapes.size()) throw input_error(ptr + "/cells", "expected one entry per block");
    for (std::size_t b = 0; b < cells.size(); ++b) {
      const std::string cp = ptr + "/cells/" + std::to_string(b);
      if (cells[b].is_null()) {
        si.cells.push_back(std::nullopt);
        continue;
      }
      rd.array(cells[b], cp);
      if (cells[b].size() != 2) throw input_error(cp, "expected [left, right] Borels");
      auto borel = [&](const json& x, const std::string& p) {
        if (x == "B+") return Borel::Plus;
        if (x == "B-") return Borel::Minus;
        throw input_error(p, "expected \"B+\" or \"B-\"");
      };
      si.cells.push_back(std::pair{borel(cells[b][0], cp + "/0"), borel(cells[b][1], cp + "/1")});
    }
    const json& reps = rd.array(rd.field(sp, ptr, "reps"), ptr + "/reps");
    if (reps.empty()) throw input_error(ptr + "/reps", "at least one representative is required");
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const std::string rp = ptr + "/reps/" + std::to_string(i);
      rd.object(reps[i], rp, {"label", "d", "group_data"});
      RepInput ri;
      ri.label = std::to_string(i);
      if (reps[i].contains("label")) {
        if (!reps[i].at("label").is_string()) throw input_error(rp + "/label", "expected a string");
        ri.label = reps[i].at("label").get<std::string>();
      }
      ri.d = rd.blocks(rd.field(reps[i], rp, "d"), rp + "/d", shapes);
      if (reps[i].contains("group_data")) ri.group_data = group_data(reps[i].at("group_data"), rp + "/group_data");
      si.reps.push_back(std::move(ri));
    }
    spec.splitting = std::move(si);
  }
  return spec;
}

inline InputSpec parse_input_spec(const std::string& text, bool strict = true) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("", std::string("malformed JSON: ") + e.what());
  }
  return parse_input_spec(doc, strict);
}

inline json serialize_input_spec(const InputSpec& s) {
  using namespace detail;
  const LieAlg& L = s.algebra;
  const std::size_t n = L.dim();
  json alg;
  alg["labels"] = L.labels();
  json br = json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec r = L.bracket_basis(i, j);
      if (!is_zero(r)) br.push_back(json{{"x", i}, {"y", j}, {"result", vec_json(r)}});
    }
  alg["brackets"] = br;
  alg["form"] = mat_json(s.form);
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["algebra"] = alg;
  if (s.block_shapes) {
    json im = json::array();
    for (const auto& bs : s.rep_images) im.push_back(blocks_json(bs));
    doc["rep"] = json{{"block_shapes", *s.block_shapes}, {"images", im}};
  }
  if (s.triple) doc["triple"] = json{{"gplus", vecs_json(s.triple->first)}, {"gminus", vecs_json(s.triple->second)}};
  auto points = [](const std::vector<std::vector<Mat>>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(blocks_json(p));
    return a;
  };
  if (!s.points.empty()) doc["points"] = points(s.points);
  if (!s.sections.empty()) {
    json ss = json::array();
    for (const auto& si : s.sections) {
      json j{{"d", blocks_json(si.d)}, {"q", vecs_json(si.q)}, {"variant", to_string(si.variant)}};
      if (!si.points.empty()) j["points"] = points(si.points);
      if (si.group_data) j["group_data"] = group_data_json(*si.group_data);
      ss.push_back(j);
    }
    doc["sections"] = ss;
  }
  if (s.splitting) {
    const auto& sp = *s.splitting;
    json cells = json::array();
    for (const auto& c : sp.cells)
      cells.push_back(c ? json::array({to_string(c->first), to_string(c->second)}) : json(nullptr));
    json reps = json::array();
    for (const auto& r : sp.reps) {
      json j{{"label", r.label}, {"d", blocks_json(r.d)}};
      if (r.group_data) j["group_data"] = group_data_json(*r.group_data);
      reps.push_back(j);
    }
    doc["splitting"] = json{{"q", vecs_json(sp.q)}, {"variant", to_string(sp.variant)}, {"cells", cells}, {"reps", reps}};
  }
  return doc;
}

/// Indented JSON with arrays of scalars kept on one line.
inline void pretty_json(std::ostream& os, const json& j, int indent = 0) {
  auto scalar_array = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    os << "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      os << pad << json(k).dump() << ": ";
      pretty_json(os, v, indent + 2);
      os << (++i < j.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << "}";
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad;
      pretty_json(os, j[i], indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << "]";
  } else {
    os << j.dump(-1, ' ', false);
  }
}

inline std::string pretty_json(const json& j) {
  std::ostringstream os;
  pretty_json(os, j);
  os << "\n";
  return os.str();
}

/// Input spec describing a built-in case (algebra, form, representation, triple).
inline InputSpec input_spec_from_case(const FlagCase& fc) {
  InputSpec s;
  s.algebra = fc.md->amb().alg;
  s.form = fc.md->form();
  s.block_shapes = fc.rep->block_shapes();
  for (const auto& im : fc.rep->images()) s.rep_images.push_back(fc.rep->split(im));
  s.triple = std::pair{fc.md->triple.gplus.vectors(), fc.md->triple.gminus.vectors()};
  return s;
}

/// The built-in weak splitting of a case as input data: q, the cell spec and
/// the Weyl representatives with their group data.
inline SplittingInput splitting_input_from_case(const FlagCase& fc, Variant v) {
  SplittingInput sp;
  sp.q = fc.q_alg.vectors();
  sp.variant = v;
  sp.cells = cell_spec(fc, v);
  for (const auto& w : weyl_data(fc)) {
    GroupData gd = builtin_group_data(fc, w.dot, v);
    GroupDataSpec g{gd.nilpotent, {}};
    for (const auto& t : gd.toral) g.toral.push_back(t.blocks());
    sp.reps.push_back({w.label, w.dot.blocks(), std::move(g)});
  }
  return sp;
}

struct RunOptions {
  std::uint64_t seed = 1;
  bool parallel = false;
  Variant variant = Variant::Drinfeld;
  bool variant_given = false;
  CaseKind case_kind = CaseKind::GxT;
  std::size_t n = 2;
  bool allow_large = false;
  std::size_t samples = 5;
  std::set<int> simple_roots;
};

struct CommandResult {
  json report;
  int exit_code = 0;
};

inline json report_json(const std::string& command, const CheckReport& rep, json data) {
  json clauses = json::array();
  for (const auto& c : rep.clauses())
    clauses.push_back(json{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"witness", c.witness}});
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"verdict", rep.passed() ? "pass" : "fail"},
              {"clauses", clauses},
              {"data", std::move(data)}};
}

inline std::string report_text(const json& report) {
  std::ostringstream os;
  os << report.at("command").get<std::string>() << ": " << report.at("verdict").get<std::string>() << "\n";
  for (const auto& c : report.at("clauses")) {
    const bool pass = c.at("status") == "pass";
    os << (pass ? "  pass  " : "  FAIL  ") << c.at("name").get<std::string>();
    if (!pass && !c.at("witness").get<std::string>().empty()) os << "  [" << c.at("witness").get<std::string>() << "]";
    os << "\n";
  }
  const json& data = report.at("data");
  if (!data.empty()) os << pretty_json(data);
  return os.str();
}

namespace detail {

struct Built {
  std::shared_ptr<const MatRep> rep;
  std::shared_ptr<const ManinData> md;
};

inline std::shared_ptr<const MatRep> build_rep(const InputSpec& s, const char* cmd) {
  if (!s.block_shapes) throw input_error("/rep", std::string("command '") + cmd + "' needs a representation");
  auto rep = std::make_shared<const MatRep>(MatRep::from_blocks(*s.block_shapes, s.rep_images));
  auto check = validate_rep(*rep, s.algebra);
  if (auto f = check.first_failure()) throw input_error("/rep", "representation fails " + f->name + " " + f->witness);
  return rep;
}

inline ManinTriple build_triple(const InputSpec& s, const char* cmd) {
  if (!s.triple) throw input_error("/triple", std::string("command '") + cmd + "' needs a triple");
  const std::size_t n = s.algebra.dim();
  return ManinTriple{QuadLie{s.algebra, s.form}, Subspace::span(s.triple->first, n),
                     Subspace::span(s.triple->second, n)};
}

inline std::shared_ptr<const ManinData> build_data(const InputSpec& s, const char* cmd) {
  ManinTriple t = build_triple(s, cmd);
  auto rep = validate_manin_triple(t);
  if (auto f = rep.first_failure())
    throw input_error("/triple", "triple is not a Manin triple (" + f->name + ": " + f->witness + ")");
  return std::make_shared<const ManinData>(std::move(t));
}

inline std::optional<GroupData> to_group_data(const std::optional<GroupDataSpec>& g,
                                              const std::shared_ptr<const MatRep>& rep) {
  if (!g) return std::nullopt;
  GroupData out{g->nilpotent, {}};
  for (const auto& t : g->toral) out.toral.emplace_back(rep, t);
  return out;
}

inline json mat_data(const Mat& m) { return mat_json(m); }

}  // namespace detail

/// Runs one command. Input problems throw input_error (or std::invalid_argument
/// for option errors); check failures are reported with exit code 1.
inline CommandResult execute_command(const std::string& cmd, const std::optional<InputSpec>& spec,
                                     const RunOptions& opt) {
  using namespace detail;
  auto need_spec = [&]() -> const InputSpec& {
    if (!spec) throw std::invalid_argument("command '" + cmd + "' needs an input file");
    return *spec;
  };
  CheckReport rep;
  json data = json::object();

  if (cmd == "validate") {
    const InputSpec& s = need_spec();
    if (s.triple) rep.merge(validate_manin_triple(build_triple(s, "validate")));
    else rep.merge(validate_quadratic_lie(QuadLie{s.algebra, s.form}), "quad:");
    if (s.block_shapes) {
      auto r = std::make_shared<const MatRep>(MatRep::from_blocks(*s.block_shapes, s.rep_images));
      rep.merge(validate_rep(*r, s.algebra), "rep:");
    }
  } else if (cmd == "rmatrix") {
    const InputSpec& s = need_spec();
    auto md = build_data(s, "rmatrix");
    auto db = dual_bases(md->triple);
    data["xs"] = vecs_json(db.xs);
    data["xis"] = vecs_json(db.xis);
    data["coeff"] = mat_data(md->r.coeff);
    data["h"] = vecs_json(md->h.vectors());
    rep.merge(schouten_square(md->triple, md->r), "schouten:");
  } else if (cmd == "bivector-at") {
    const InputSpec& s = need_spec();
    auto md = build_data(s, "bivector-at");
    auto r = build_rep(s, "bivector-at");
    if (s.points.empty()) throw input_error("/points", "bivector-at needs at least one point");
    std::vector<Variant> vs = opt.variant_given ? std::vector<Variant>{opt.variant}
                                                : std::vector<Variant>{Variant::Drinfeld, Variant::Heisenberg};
    json pts = json::array();
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      GroupPoint d(r, s.points[i]);
      json entry = json::object();
      for (Variant v : vs) {
        std::string name = "point[" + std::to_string(i) + "]:" + to_string(v) + ":lemma-consistency";
        try {
          Bivector b = bivector_at(*md, d, v);
          entry[to_string(v)] = json{{"tensor", mat_data(b.tensor)}, {"sharp", mat_data(*b.sharp)}};
          rep.add(name, true);
        } catch (const std::logic_error& e) {
          rep.add(name, false, e.what());
        }
      }
      pts.push_back(entry);
    }
    data["points"] = pts;
  } else if (cmd == "check-section") {
    const InputSpec& s = need_spec();
    auto md = build_data(s, "check-section");
    auto r = build_rep(s, "check-section");
    if (s.sections.empty()) throw input_error("/sections", "check-section needs at least one section");
    for (std::size_t i = 0; i < s.sections.size(); ++i) {
      const auto& si = s.sections[i];
      const std::size_t n = md->dim();
      SectionSpec spec_i{md, GroupPoint(r, si.d), Subspace::span(si.q, n), si.variant,
                         to_group_data(si.group_data, r)};
      SectionGeometry geom = section_geometry(spec_i);
      const std::string pre = "section[" + std::to_string(i) + "]:";
      CheckReport cond = check_section_conditions(spec_i, geom);
      rep.merge(cond, pre);
      std::vector<GroupPoint> pts{GroupPoint::identity(r)};
      for (const auto& p : si.points) pts.emplace_back(r, p);
      GroupData gd = spec_i.group_data ? *spec_i.group_data : derive_group_data(spec_i, geom);
      for (std::size_t k = si.points.size() + 1; k < opt.samples; ++k) {
        Rng rng = derive_rng(opt.seed, i, k);
        pts.push_back(sample_gd(spec_i, gd, rng));
      }
      for (std::size_t k = 0; k < pts.size(); ++k)
        rep.merge(weak_section_verify(spec_i, geom, pts[k]), pre + "point[" + std::to_string(k) + "]:");
    }
  } else if (cmd == "check-splitting") {
    const InputSpec& s = need_spec();
    auto md = build_data(s, "check-splitting");
    auto r = build_rep(s, "check-splitting");
    if (!s.splitting) throw input_error("/splitting", "check-splitting needs a splitting section");
    const auto& sp = *s.splitting;
    std::vector<Representative> reps;
    for (const auto& ri : sp.reps) reps.push_back({ri.label, GroupPoint(r, ri.d), to_group_data(ri.group_data, r)});
    SplittingOptions so{opt.seed, 100, opt.samples, opt.parallel};
    rep.merge(check_weak_splitting(md, Subspace::span(sp.q, md->dim()), reps, sp.variant, sp.cells, so));
  } else if (cmd == "flag-suite") {
    if (opt.n < 2) throw std::invalid_argument("--n must be at least 2");
    if (opt.n > 4 && !opt.allow_large) throw std::invalid_argument("--n above 4 needs --allow-large");
    FlagCase fc = standard_case(opt.case_kind, opt.n);
    Variant v = opt.variant_given ? opt.variant
                : opt.case_kind == CaseKind::GxG ? Variant::Heisenberg
                                                 : Variant::Drinfeld;
    rep.merge(run_flag_suite(fc, v, SuiteOptions{opt.seed, opt.samples, 100, opt.parallel}));
    data["case"] = to_string(opt.case_kind);
    data["n"] = opt.n;
    data["variant"] = to_string(v);
    data["representatives"] = weyl_data(fc).size();
  } else if (cmd == "coset-reps") {
    if (opt.n < 2) throw std::invalid_argument("--n must be at least 2");
    auto reps = minimal_coset_reps(static_cast<int>(opt.n), opt.simple_roots);
    json list = json::array();
    for (const auto& w : reps)
      list.push_back(json{{"word", perm_label(w)}, {"one_line", perm_one_line(w)}, {"length", perm_length(w)}});
    data["n"] = opt.n;
    data["I"] = opt.simple_roots;
    data["representatives"] = list;
    std::size_t wi = 1, w = 1;
    for (std::size_t k = 2; k <= opt.n; ++k) w *= k;
    // |W_I| for type A: product of factorials of the block sizes cut out by I.
    std::size_t run = 1;
    for (int i = 1; i <= static_cast<int>(opt.n); ++i) {
      if (i < static_cast<int>(opt.n) && opt.simple_roots.count(i)) {
        ++run;
        continue;
      }
      for (std::size_t k = 2; k <= run; ++k) wi *= k;
      run = 1;
    }
    rep.add("count = |W|/|W_I|", reps.size() * wi == w,
            std::to_string(reps.size()) + " * " + std::to_string(wi) + " != " + std::to_string(w));
  } else {
    throw std::invalid_argument("unknown command '" + cmd + "'");
  }
  if (cmd == "check-section" || cmd == "check-splitting" || cmd == "flag-suite") data["seed"] = opt.seed;
  return {report_json(cmd, rep, std::move(data)), rep.passed() ? 0 : 1};
}

}  // namespace manin
