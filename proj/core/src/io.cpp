#include "addcomb/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "addcomb/error.hpp"

namespace addcomb {

namespace {

using nlohmann::json;

json ctx_json(const GroupCtx& ctx) {
  if (ctx.is_integers()) return json{{"kind", "integers"}};
  return json{{"kind", "residues"}, {"modulus", ctx.modulus()}};
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Elem as_elem(const json& v, long index) {
  if (!v.is_number_integer()) throw FormatError("element is not an integer", index);
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Elem>::max()))
    throw FormatError("element out of 64-bit range", index);
  return v.get<Elem>();
}

GroupCtx ctx_from(const json& j) {
  const json& kind = field(j, "kind");
  if (kind == "integers") return GroupCtx::integers();
  if (kind == "residues") {
    const json& m = field(j, "modulus");
    if (!m.is_number_integer()) throw FormatError("modulus is not an integer");
    try {
      return GroupCtx::residues(m.get<Elem>());
    } catch (const ContextError& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("unknown group kind");
}

Count parse_count(const json& v, long index) {
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0)) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.empty()) throw FormatError("empty count string", index);
    Count c = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw FormatError("count string is not a decimal integer", index);
      c = checked_add(checked_mul(c, 10), static_cast<Count>(ch - '0'));
    }
    return c;
  }
  throw FormatError("count is not a nonnegative integer", index);
}

}  // namespace

std::string ctx_to_json(const GroupCtx& ctx) { return ctx_json(ctx).dump(); }

std::string set_to_json(const GSet& s) {
  json j{{"group", ctx_json(s.ctx())}, {"elements", s.vec()}};
  return j.dump();
}

GSet set_from_json(std::string_view text) {
  const json j = parse(text);
  const GroupCtx ctx = ctx_from(field(j, "group"));
  const json& elems = field(j, "elements");
  if (!elems.is_array()) throw FormatError("'elements' is not an array");
  std::vector<Elem> v;
  v.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Elem x = as_elem(elems[i], static_cast<long>(i));
    if (!ctx.is_canonical(x)) throw FormatError("element " + std::to_string(x) + " outside [0, modulus)", static_cast<long>(i));
    v.push_back(x);
  }
  return GSet(ctx, std::move(v));
}

std::string countfn_to_json(const CountFn& f) {
  json values = json::array();
  for (const auto& [x, v] : f.entries()) {
    if (v > std::numeric_limits<std::uint64_t>::max()) values.push_back(json::array({x, to_string(v)}));
    else values.push_back(json::array({x, static_cast<std::uint64_t>(v)}));
  }
  return json{{"ctx", ctx_json(f.ctx())}, {"values", values}}.dump();
}

CountFn countfn_from_json(std::string_view text) {
  const json j = parse(text);
  const GroupCtx ctx = ctx_from(field(j, "ctx"));
  const json& values = field(j, "values");
  if (!values.is_array()) throw FormatError("'values' is not an array");
  std::vector<CountFn::Entry> e;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const json& pair = values[i];
    const auto idx = static_cast<long>(i);
    if (!pair.is_array() || pair.size() != 2) throw FormatError("value entry is not an [x, v] pair", idx);
    const Elem x = as_elem(pair[0], idx);
    if (!ctx.is_canonical(x)) throw FormatError("key outside [0, modulus)", idx);
    e.emplace_back(x, parse_count(pair[1], idx));
  }
  return CountFn(ctx, std::move(e));
}

std::string spec_to_json(const FamilySpec& s) {
  json j{{"family", family_name(s.family)}, {"n", s.n},         {"start", s.start},
         {"step", s.step},                  {"order", s.order}, {"probability", s.probability},
         {"seed", s.seed}};
  return j.dump();
}

FamilySpec spec_from_json(std::string_view text) {
  const json j = parse(text);
  FamilySpec s;
  try {
    s.family = parse_family(field(j, "family").get<std::string>());
    if (j.contains("n")) s.n = j.at("n").get<std::int64_t>();
    if (j.contains("start")) s.start = j.at("start").get<std::int64_t>();
    if (j.contains("step")) s.step = j.at("step").get<std::int64_t>();
    if (j.contains("order")) s.order = j.at("order").get<std::int64_t>();
    if (j.contains("probability")) s.probability = j.at("probability").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad family spec: ") + e.what());
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
  return s;
}

std::string matrix_to_json(const SymMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return json{{"index", m.index().vec()}, {"entries", rows}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace addcomb
