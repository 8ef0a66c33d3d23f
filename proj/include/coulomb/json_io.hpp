#pragma once

#include "coulomb/laplace.hpp"
#include "coulomb/oracle.hpp"
#include "coulomb/permeability.hpp"
#include "coulomb/spectral.hpp"

#include <json.hpp>

#include <string>

// JSON rendering shared by the CLI and the repro goldens. Complex numbers are
// [re, im]; every real is rounded to 12 significant digits so output is
// byte-stable.
namespace coulomb::json_io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "v1";

double round12(double x);
std::string format12(double x);  // "%.12g"

json to_json(double x);
json to_json(cplx z);
json to_json(const Mat2& m);
json to_json(const BoundaryData& bd);
json to_json(const ExtensionSpec& ext);
json to_json(const BCForm& bc);
json to_json(const PermeabilityVerdict& v);
json to_json(const EigenRecord& rec);
json to_json(const ParityEigen& e);
json to_json(const ConventionCheck& c);
json to_json(const oracle::LevelEstimate& lv);
json to_json(const oracle::ChannelEvidence& ev);
json to_json(const oracle::DeficiencySummary& s);
json to_json(const SelfAdjointnessRow& row);

// [[[re, im], [re, im]], [[re, im], [re, im]]]; DomainError when malformed.
Mat2 parse_matrix(const std::string& text);

}  // namespace coulomb::json_io
