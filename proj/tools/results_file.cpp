#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace pbar::cli {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t require_uint(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field ") + key);
  if (!it->is_number_unsigned()) throw ParseError(std::string("field ") + key + " is not a non-negative integer");
  return it->get<std::uint64_t>();
}

}  // namespace

std::string serialize(const HuntLine& line) {
  const HuntRecord& r = line.record;
  json obj = json::object();
  obj["ell"] = r.ell;
  obj["j"] = r.j;
  obj["q"] = r.q;
  obj["interesting"] = r.interesting;
  obj["witness_n"] = r.witness_n ? json(*r.witness_n) : json(nullptr);
  obj["n0"] = r.n0;
  obj["kappa"] = r.kappa;
  obj["elapsed_ms"] = line.elapsed_ms;
  return obj.dump();
}

HuntLine parse_hunt_line(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError("record is not an object");
  static const char* const kFields[] = {"ell", "j", "q", "interesting", "witness_n", "n0", "kappa", "elapsed_ms"};
  if (obj.size() != std::size(kFields)) throw ParseError("unexpected field set");

  HuntLine out;
  HuntRecord& r = out.record;
  r.ell = require_uint(obj, "ell");
  const std::uint64_t j = require_uint(obj, "j");
  if (j == 0 || j > 64) throw ParseError("j out of range");
  r.j = static_cast<unsigned>(j);
  r.q = require_uint(obj, "q");
  const auto interesting = obj.find("interesting");
  if (interesting == obj.end() || !interesting->is_boolean()) throw ParseError("field interesting is not a boolean");
  r.interesting = interesting->get<bool>();
  const auto witness = obj.find("witness_n");
  if (witness == obj.end()) throw ParseError("missing field witness_n");
  if (!witness->is_null()) r.witness_n = require_uint(obj, "witness_n");
  r.n0 = require_uint(obj, "n0");
  r.kappa = require_uint(obj, "kappa");
  out.elapsed_ms = require_uint(obj, "elapsed_ms");

  CongruenceParams params;
  try {
    params = CongruenceParams::make(r.ell, r.j, r.q);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  if (params.n0 != r.n0 || params.kappa != r.kappa) throw ParseError("n0 or kappa inconsistent with ell, j");
  if (r.interesting == r.witness_n.has_value()) throw ParseError("witness_n must be null exactly when interesting");
  const auto idx = hunt_indices(params);
  if (r.interesting) {
    r.checked_terms = idx.size();
  } else {
    const auto pos = std::find(idx.begin(), idx.end(), *r.witness_n);
    if (pos == idx.end()) throw ParseError("witness_n is not a tested index");
    r.checked_terms = static_cast<std::uint64_t>(pos - idx.begin()) + 1;
  }
  return out;
}

std::vector<HuntLine> read_results(const std::string& path) {
  std::vector<HuntLine> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (in.eof()) {
      // A final line without its newline was cut off mid-write.
      throw CorruptResults(line_no, "truncated record");
    }
    try {
      out.push_back(parse_hunt_line(text));
    } catch (const ParseError& e) {
      throw CorruptResults(line_no, e.what());
    }
  }
  return out;
}

}  // namespace pbar::cli
