// JSON forms of every result type. Rationals are "p/q" strings; nothing
// depends on the clock, so equal inputs give byte-identical output.
#pragma once

#include <string>

#include "json.hpp"

#include "amlab/am_engine.hpp"
#include "amlab/corpus.hpp"
#include "amlab/terwilliger.hpp"

namespace amlab {

using nlohmann::json;

inline constexpr const char* kToolName = "amlab";
inline constexpr const char* kToolVersion = "1.0.0";

json to_json(const Rational& r);
json to_json(const std::vector<Rational>& v);
json to_json(const RationalMatrix& m);
json scheme_info(const Scheme& s);
json to_json(const CodeParameters& p, const Scheme& s);
json to_json(const DistanceDistribution& d);
json to_json(const DesignLevelReport& r);
json to_json(const TDesignResult& r);
json to_json(const SemilatticeVerdict& v);
json to_json(const AMReport& r);
json to_json(const MartinOutcome& m);
json to_json(const ModuleCatalogEntry& e);
json to_json(const ModuleSignature& s);
json to_json(const LabVerdict& v);
json to_json(const SplitReport& s);
json to_json(const OrthogonalityVerdict& v);
json to_json(const CorpusEntry& e);

/// {"tool", "version", "config", "result"}.
json envelope(const json& config, const json& result);
json error_json(const Error& e);

}  // namespace amlab
