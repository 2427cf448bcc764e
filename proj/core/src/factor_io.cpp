#include "ctd/factor_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ctd/error.hpp"

namespace ctd {

namespace {

constexpr const char* kMagic = "ctd-factors";
constexpr int kFormatVersion = 1;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing bundle file '" + path.string() + "'");
  return in;
}

double parse_double(const std::string& token, const char* what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || token.empty())
    throw IoError(std::string("malformed ") + what + " '" + token + "'");
  return v;
}

index_t parse_index(const std::string& token, const char* what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end != begin + token.size() || token.empty())
    throw IoError(std::string("malformed ") + what + " '" + token + "'");
  return static_cast<index_t>(v);
}

}  // namespace

void save_factors(const LRFactors& factors, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "'");

  {
    auto out = open_out(dir / "manifest.txt");
    out << kMagic << ' ' << kFormatVersion << '\n';
    out << "shape";
    for (index_t e : factors.tensor_shape()) out << ' ' << e;
    out << '\n';
    out << "mode " << factors.mode + 1 << '\n';
    out << "epsilon " << fmt(factors.epsilon) << '\n';
    out << "seed " << factors.seed << '\n';
    out << "kept " << factors.kept_count() << '\n';
    out << "fibers";
    for (const FiberId& id : factors.kept_fibers) out << ' ' << id.flat + 1;
    out << '\n';
  }
  {
    auto out = open_out(dir / "R.tsv");
    for (index_t j = 0; j < factors.R.cols(); ++j) {
      const auto cr = factors.R.column_rows(j);
      const auto cv = factors.R.column_values(j);
      for (size_t t = 0; t < cr.size(); ++t)
        out << cr[t] + 1 << '\t' << j + 1 << '\t' << fmt(cv[t]) << '\n';
    }
  }
  {
    auto out = open_out(dir / "C.tsv");
    for (index_t i = 0; i < factors.C.nnz(); ++i) {
      for (index_t ix : factors.C.index(i)) out << ix + 1 << '\t';
      out << fmt(factors.C.value(i)) << '\n';
    }
  }
  {
    auto out = open_out(dir / "U.tsv");
    for (index_t r = 0; r < factors.U.rows(); ++r) {
      for (index_t c = 0; c < factors.U.cols(); ++c) {
        if (c) out << '\t';
        out << fmt(factors.U.at(r, c));
      }
      out << '\n';
    }
  }
}

LRFactors load_factors(const std::filesystem::path& dir) {
  LRFactors factors;
  std::vector<index_t> shape;
  index_t kept = 0;
  std::vector<index_t> fiber_flats;

  {
    auto in = open_in(dir / "manifest.txt");
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic)
      throw IoError("not a factor bundle (bad magic)");
    if (version != kFormatVersion)
      throw IoError("unsupported bundle version " + std::to_string(version));
    std::string key;
    while (in >> key) {
      if (key == "shape") {
        std::string rest;
        std::getline(in, rest);
        std::istringstream fields(rest);
        index_t e;
        while (fields >> e) shape.push_back(e);
      } else if (key == "mode") {
        index_t m;
        if (!(in >> m)) throw IoError("manifest mode missing");
        factors.mode = static_cast<int>(m) - 1;
      } else if (key == "epsilon") {
        std::string tok;
        in >> tok;
        factors.epsilon = parse_double(tok, "epsilon");
      } else if (key == "seed") {
        std::uint64_t s;
        if (!(in >> s)) throw IoError("manifest seed missing");
        factors.seed = s;
      } else if (key == "kept") {
        if (!(in >> kept)) throw IoError("manifest kept count missing");
      } else if (key == "fibers") {
        std::string rest;
        std::getline(in, rest);
        std::istringstream fields(rest);
        std::string tok;
        while (fields >> tok)
          fiber_flats.push_back(parse_index(tok, "fiber id") - 1);
      } else {
        throw IoError("unknown manifest key '" + key + "'");
      }
    }
    if (shape.empty()) throw IoError("manifest shape missing");
    if (factors.mode < 0 || factors.mode >= static_cast<int>(shape.size()))
      throw IoError("manifest mode out of range");
    if (static_cast<index_t>(fiber_flats.size()) != kept)
      throw IoError("manifest fiber ids disagree with kept count");
  }

  for (index_t flat : fiber_flats)
    factors.kept_fibers.push_back(make_fiber_id(shape, factors.mode, flat));

  {
    auto in = open_in(dir / "R.tsv");
    std::vector<index_t> rows, cols;
    std::vector<double> vals;
    std::string r_tok, c_tok, v_tok;
    while (in >> r_tok >> c_tok >> v_tok) {
      rows.push_back(parse_index(r_tok, "R row") - 1);
      cols.push_back(parse_index(c_tok, "R column") - 1);
      vals.push_back(parse_double(v_tok, "R value"));
    }
    try {
      factors.R = SparseMatrix(shape[static_cast<size_t>(factors.mode)], kept,
                               std::move(rows), std::move(cols),
                               std::move(vals));
    } catch (const Error& e) {
      throw IoError(std::string("R.tsv inconsistent: ") + e.what());
    }
  }

  {
    auto in = open_in(dir / "C.tsv");
    std::vector<index_t> core_shape = shape;
    core_shape[static_cast<size_t>(factors.mode)] = kept;
    const size_t order = core_shape.size();
    std::vector<index_t> indices;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream fields(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (fields >> tok) tokens.push_back(tok);
      if (tokens.empty()) continue;
      if (tokens.size() != order + 1)
        throw IoError("C.tsv line " + std::to_string(line_no) +
                      ": wrong field count");
      for (size_t k = 0; k < order; ++k)
        indices.push_back(parse_index(tokens[k], "C index") - 1);
      values.push_back(parse_double(tokens.back(), "C value"));
    }
    try {
      factors.C =
          SparseTensor(core_shape, std::move(indices), std::move(values));
    } catch (const Error& e) {
      throw IoError(std::string("C.tsv inconsistent: ") + e.what());
    }
  }

  {
    auto in = open_in(dir / "U.tsv");
    factors.U = DenseMatrix(kept, kept);
    std::string line;
    index_t r = 0;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (fields >> tok) tokens.push_back(tok);
      if (tokens.empty()) continue;
      if (r >= kept || static_cast<index_t>(tokens.size()) != kept)
        throw IoError("U.tsv dimensions disagree with kept count");
      for (index_t c = 0; c < kept; ++c)
        factors.U.at(r, c) =
            parse_double(tokens[static_cast<size_t>(c)], "U value");
      ++r;
    }
    if (r != kept) throw IoError("U.tsv dimensions disagree with kept count");
  }

  return factors;
}

}  // namespace ctd
