#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctd/sparse_tensor.hpp"

namespace ctd {

/// One parsed traffic record. Host ids are dense, interned per namespace
/// (sources and destinations separately) in first-appearance order.
struct EdgeRecord {
  index_t src = 0;
  index_t dst = 0;
  double weight = 1.0;
  std::optional<std::int64_t> time;  // seconds; absent when the input has none

  bool operator==(const EdgeRecord& other) const = default;
};

struct EdgeList {
  std::vector<EdgeRecord> records;
  std::vector<std::string> src_labels;  // id -> original token
  std::vector<std::string> dst_labels;

  bool fully_timed() const;
};

/// Parses whitespace-separated edge-list text: `src dst [weight] [time]`
/// per line, `%` or `#` lines ignored. Missing weight defaults to 1.
/// Throws ParseError (with line number) on malformed lines and
/// EmptyInputError when no record survives.
EdgeList parse_edge_list(std::istream& in);
EdgeList parse_edge_list(const std::filesystem::path& path);

}  // namespace ctd
