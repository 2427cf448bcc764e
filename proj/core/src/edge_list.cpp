#include "ctd/edge_list.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "ctd/error.hpp"

namespace ctd {

namespace {

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + token.size() && !token.empty();
}

bool parse_int(const std::string& token, std::int64_t& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtoll(begin, &end, 10);
  return end == begin + token.size() && !token.empty();
}

index_t intern(std::unordered_map<std::string, index_t>& ids,
               std::vector<std::string>& labels, const std::string& token) {
  const auto [it, inserted] =
      ids.emplace(token, static_cast<index_t>(labels.size()));
  if (inserted) labels.push_back(token);
  return it->second;
}

}  // namespace

bool EdgeList::fully_timed() const {
  return std::all_of(records.begin(), records.end(),
                     [](const EdgeRecord& r) { return r.time.has_value(); });
}

EdgeList parse_edge_list(std::istream& in) {
  EdgeList edges;
  std::unordered_map<std::string, index_t> src_ids, dst_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string src_tok;
    if (!(fields >> src_tok)) continue;  // blank line
    if (src_tok[0] == '%' || src_tok[0] == '#') continue;

    std::string dst_tok, weight_tok, time_tok, excess;
    if (!(fields >> dst_tok))
      throw ParseError(line_no, "expected at least source and destination");
    fields >> weight_tok;
    fields >> time_tok;
    if (fields >> excess)
      throw ParseError(line_no, "too many fields");

    EdgeRecord record;
    record.src = intern(src_ids, edges.src_labels, src_tok);
    record.dst = intern(dst_ids, edges.dst_labels, dst_tok);
    if (!weight_tok.empty()) {
      if (!parse_double(weight_tok, record.weight))
        throw ParseError(line_no, "malformed weight '" + weight_tok + "'");
    }
    if (!time_tok.empty()) {
      std::int64_t t = 0;
      if (!parse_int(time_tok, t))
        throw ParseError(line_no, "malformed timestamp '" + time_tok + "'");
      if (t < 0) throw ParseError(line_no, "negative timestamp");
      record.time = t;
    }
    edges.records.push_back(std::move(record));
  }
  if (edges.records.empty())
    throw EmptyInputError("edge list contains no records");
  return edges;
}

EdgeList parse_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_edge_list(in);
}

}  // namespace ctd
