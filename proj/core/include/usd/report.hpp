#pragma once

#include <string>

#include "usd/corpus.hpp"

namespace usd {

enum class ReportFormat { text, json, csv };

/// Maps "text" | "json" | "csv" to the enum; throws on anything else.
ReportFormat parse_format(const std::string& name);

/// Deterministic serialization of a corpus report. Text mode rounds to four
/// decimals (table style); json and csv carry full double precision.
std::string emit_report(const CorpusReport& report, ReportFormat format);

}  // namespace usd
