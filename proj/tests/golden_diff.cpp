// Compares a CLI report against a golden file. Every field of the golden file
// must appear in the report with an equal value; floats match to 1e-9
// relative. Extra fields in the report are ignored.
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

bool same(const json& want, const json& got, const std::string& path) {
  if (want.is_object()) {
    if (!got.is_object()) {
      std::cerr << path << ": expected an object\n";
      return false;
    }
    bool ok = true;
    for (const auto& [key, value] : want.items()) {
      if (!got.contains(key)) {
        std::cerr << path << "/" << key << ": missing\n";
        ok = false;
      } else {
        ok = same(value, got.at(key), path + "/" + key) && ok;
      }
    }
    return ok;
  }
  if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) {
      std::cerr << path << ": array length differs\n";
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < want.size(); ++i) ok = same(want[i], got[i], path + "/" + std::to_string(i)) && ok;
    return ok;
  }
  if (want.is_number_float() || (want.is_number() && got.is_number_float())) {
    if (!got.is_number()) {
      std::cerr << path << ": expected a number\n";
      return false;
    }
    const double a = want.get<double>(), b = got.get<double>();
    if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) {
      std::cerr << path << ": " << a << " vs " << b << "\n";
      return false;
    }
    return true;
  }
  if (want != got) {
    std::cerr << path << ": expected " << want.dump() << ", got " << got.dump() << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: golden_diff GOLDEN ACTUAL\n";
    return 2;
  }
  try {
    std::ifstream g(argv[1]), a(argv[2]);
    json want = json::parse(g);
    json got = json::parse(a);
    return same(want, got, "") ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
