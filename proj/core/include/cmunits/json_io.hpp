#pragma once

#include <string>
#include <vector>

#include "cmunits/characters.hpp"
#include "cmunits/identities.hpp"
#include "cmunits/scan.hpp"

namespace cmunits {

inline constexpr int kSchemaVersion = 1;

/**
 * Serialization conventions, shared by every writer: a "schema" version
 * field, QuadInt as {"a", "b", "d"} with the coordinates as decimal strings
 * (they outgrow any JSON number type), complex values as {"re", "im"}
 * decimal strings tagged with the precision they were computed at. Output is
 * deterministic except for the timing field of scan reports.
 */
std::string scan_report_json(const ScanReport& r);

/** Flat CSV table of the per-prime scan records, header row first. */
std::string scan_report_csv(const ScanReport& r);

std::string identity_reports_json(const std::vector<IdentityReport>& reports, long bits);

std::string verdict_json(const SurjectivityVerdict& v);

/**
 * Class-number facts from a JSON config file; keys h_mod_p_coprime,
 * h_mod_pi_coprime, h_mod_pibar_coprime, unique_prime_above_pi, each an
 * optional boolean. Missing keys stay unset, so the verdict logic downgrades
 * to Inconclusive instead of assuming.
 */
VerdictConfig load_verdict_config(const std::string& path);

/** Writes via a temporary file and rename, so partial output never lands. */
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cmunits
