#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fracprox/datagen.hpp"
#include "fracprox/error.hpp"

namespace fracprox {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void parse_fail(const fs::path& file, std::size_t line, std::size_t col,
                             const std::string& what) {
  throw Error(ErrorCode::ParseError, file.string() + ":" + std::to_string(line) + ":" +
                                         std::to_string(col) + ": " + what);
}

double parse_double(const fs::path& file, std::size_t line, const Token& tok) {
  double v = 0.0;
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    parse_fail(file, line, tok.column, "expected a real number, found '" + std::string(tok.text) + "'");
  return v;
}

long long parse_int(const fs::path& file, std::size_t line, const Token& tok) {
  long long v = 0;
  const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size())
    parse_fail(file, line, tok.column, "expected an integer, found '" + std::string(tok.text) + "'");
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

Matrix read_matrix_market(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) parse_fail(path, 1, 1, "empty file");
  ++lineno;
  const auto header = tokenize(line);
  if (header.size() != 5 || header[0].text != "%%MatrixMarket")
    parse_fail(path, 1, 1, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  if (lower(header[1].text) != "matrix")
    parse_fail(path, 1, header[1].column, "only the 'matrix' object is supported");
  const std::string format = lower(header[2].text);
  const std::string field = lower(header[3].text);
  const std::string symmetry = lower(header[4].text);
  if (format != "array" && format != "coordinate")
    parse_fail(path, 1, header[2].column, "format must be 'array' or 'coordinate'");
  if (field != "real" && field != "integer" && field != "double")
    parse_fail(path, 1, header[3].column, "field must be 'real' or 'integer'");
  if (symmetry != "general" && symmetry != "symmetric")
    parse_fail(path, 1, header[4].column, "symmetry must be 'general' or 'symmetric'");
  const bool symmetric = symmetry == "symmetric";

  // Size line.
  std::vector<Token> toks;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    toks = tokenize(line);
    if (!toks.empty()) break;
  }
  const std::size_t want = format == "array" ? 2 : 3;
  if (toks.size() != want)
    parse_fail(path, lineno, 1, "size line needs " + std::to_string(want) + " integers");
  const long long rows = parse_int(path, lineno, toks[0]);
  const long long cols = parse_int(path, lineno, toks[1]);
  if (rows < 1 || cols < 1) parse_fail(path, lineno, 1, "matrix dimensions must be positive");
  if (symmetric && rows != cols) parse_fail(path, lineno, 1, "symmetric matrix must be square");
  Matrix A = Matrix::Zero(rows, cols);

  if (format == "array") {
    std::vector<std::pair<Index, Index>> order;
    const long long total = symmetric ? rows * (rows + 1) / 2 : rows * cols;
    long long count = 0;
    Index i = 0;
    Index j = 0;
    while (count < total && std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      for (const Token& tok : tokenize(line)) {
        if (count >= total) parse_fail(path, lineno, tok.column, "more values than the declared size");
        const double v = parse_double(path, lineno, tok);
        A(i, j) = v;
        if (symmetric) A(j, i) = v;
        ++count;
        if (++i == rows) {
          ++j;
          i = symmetric ? j : 0;
        }
      }
    }
    if (count < total)
      parse_fail(path, lineno + 1, 1, "expected " + std::to_string(total) + " values, found " +
                                          std::to_string(count));
  } else {
    const long long nnz = parse_int(path, lineno, toks[2]);
    if (nnz < 0) parse_fail(path, lineno, toks[2].column, "entry count must be nonnegative");
    long long count = 0;
    while (count < nnz && std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] == '%') continue;
      const auto e = tokenize(line);
      if (e.empty()) continue;
      if (e.size() != 3) parse_fail(path, lineno, 1, "coordinate entry needs 'row col value'");
      const long long r = parse_int(path, lineno, e[0]);
      const long long c = parse_int(path, lineno, e[1]);
      if (r < 1 || r > rows) parse_fail(path, lineno, e[0].column, "row index out of range");
      if (c < 1 || c > cols) parse_fail(path, lineno, e[1].column, "column index out of range");
      const double v = parse_double(path, lineno, e[2]);
      A(r - 1, c - 1) += v;
      if (symmetric && r != c) A(c - 1, r - 1) += v;
      ++count;
    }
    if (count < nnz)
      parse_fail(path, lineno + 1, 1, "expected " + std::to_string(nnz) + " entries, found " +
                                          std::to_string(count));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    const auto extra = tokenize(line);
    if (!extra.empty()) parse_fail(path, lineno, extra[0].column, "trailing data after the matrix");
  }
  return A;
}

void write_matrix_market(const fs::path& path, const Matrix& A) {
  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << A.rows() << ' ' << A.cols() << '\n';
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i) out << format_double(A(i, j)) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

Vector read_vector(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokenize(line);
    if (toks.empty() || toks[0].text.front() == '#' || toks[0].text.front() == '%') continue;
    if (toks.size() != 1) parse_fail(path, lineno, toks[1].column, "expected one value per line");
    values.push_back(parse_double(path, lineno, toks[0]));
  }
  if (values.empty()) parse_fail(path, lineno + 1, 1, "vector file has no values");
  return Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
}

void write_vector(const fs::path& path, const Vector& v) {
  std::ofstream out = open_out(path);
  for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

fs::path save_instance(const ProblemInstance& inst, const fs::path& dir,
                       const std::optional<Vector>& x_orig,
                       const std::optional<GeneratorInfo>& generator) {
  fs::create_directories(dir);
  json manifest;
  manifest["schema_version"] = kManifestSchemaVersion;
  manifest["variant"] = to_string(inst.kind());
  manifest["m"] = inst.rows();
  manifest["n"] = inst.cols();
  manifest["A"] = "A.mtx";
  manifest["b"] = "b.txt";
  write_matrix_market(dir / "A.mtx", inst.A());
  write_vector(dir / "b.txt", inst.b());
  if (inst.is_box_lasso()) {
    const auto& p = inst.box_lasso();
    manifest["lambda"] = p.lambda;
    manifest["lower"] = "lower.txt";
    manifest["upper"] = "upper.txt";
    write_vector(dir / "lower.txt", p.lower);
    write_vector(dir / "upper.txt", p.upper);
  } else {
    manifest["sigma"] = inst.ball().sigma;
    if (inst.x_feas()) {
      manifest["x_feas"] = "x_feas.txt";
      write_vector(dir / "x_feas.txt", *inst.x_feas());
    }
  }
  if (x_orig) {
    manifest["x_orig"] = "x_orig.txt";
    write_vector(dir / "x_orig.txt", *x_orig);
  }
  if (generator) {
    json g;
    g["m"] = generator->m;
    g["n"] = generator->n;
    g["s"] = generator->s;
    g["seed"] = generator->seed;
    g["variant"] = to_string(generator->params.variant);
    g["lambda"] = generator->params.lambda;
    g["box"] = generator->params.box;
    g["nf"] = generator->params.nf;
    manifest["generator"] = g;
  }
  const fs::path mpath = dir / "manifest.json";
  std::ofstream out = open_out(mpath);
  out << manifest.dump(2) << '\n';
  return mpath;
}

namespace {

json parse_manifest(const fs::path& path) {
  std::ifstream in = open_in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    parse_fail(path, line, col, "invalid JSON");
  }
}

template <class T>
T require(const json& j, const char* key, const fs::path& path) {
  if (!j.contains(key)) parse_fail(path, 1, 1, std::string("manifest is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    parse_fail(path, 1, 1, std::string("manifest field '") + key + "' has the wrong type");
  }
}

VariantKind parse_variant(const std::string& s, const fs::path& path) {
  if (s == "box_lasso") return VariantKind::BoxLasso;
  if (s == "ball_constrained") return VariantKind::BallConstrained;
  parse_fail(path, 1, 1, "unknown variant '" + s + "'");
}

}  // namespace

LoadedInstance load_instance(const fs::path& manifest_path) {
  const json j = parse_manifest(manifest_path);
  const fs::path base = manifest_path.parent_path();
  const int version = require<int>(j, "schema_version", manifest_path);
  if (version != kManifestSchemaVersion)
    parse_fail(manifest_path, 1, 1, "unsupported schema_version " + std::to_string(version));
  const VariantKind variant = parse_variant(require<std::string>(j, "variant", manifest_path), manifest_path);

  Matrix A = read_matrix_market(base / require<std::string>(j, "A", manifest_path));
  Vector b = read_vector(base / require<std::string>(j, "b", manifest_path));

  std::optional<Vector> x_orig;
  if (j.contains("x_orig")) x_orig = read_vector(base / require<std::string>(j, "x_orig", manifest_path));

  std::optional<GeneratorInfo> gen;
  if (j.contains("generator")) {
    const json& g = j.at("generator");
    GeneratorInfo info;
    info.m = require<Index>(g, "m", manifest_path);
    info.n = require<Index>(g, "n", manifest_path);
    info.s = require<Index>(g, "s", manifest_path);
    info.seed = require<std::uint64_t>(g, "seed", manifest_path);
    info.params.variant = parse_variant(require<std::string>(g, "variant", manifest_path), manifest_path);
    info.params.lambda = require<double>(g, "lambda", manifest_path);
    info.params.box = require<double>(g, "box", manifest_path);
    info.params.nf = require<double>(g, "nf", manifest_path);
    gen = info;
  }

  if (variant == VariantKind::BoxLasso) {
    BoxLasso p;
    p.lambda = require<double>(j, "lambda", manifest_path);
    const Index n = A.cols();
    if (j.contains("lower"))
      p.lower = read_vector(base / require<std::string>(j, "lower", manifest_path));
    else
      p.lower = Vector::Constant(n, -require<double>(j, "box", manifest_path));
    if (j.contains("upper"))
      p.upper = read_vector(base / require<std::string>(j, "upper", manifest_path));
    else
      p.upper = Vector::Constant(n, require<double>(j, "box", manifest_path));
    return {ProblemInstance(std::move(A), std::move(b), std::move(p)), std::move(x_orig), gen};
  }
  BallConstrained p;
  p.sigma = require<double>(j, "sigma", manifest_path);
  std::optional<Vector> x_feas;
  if (j.contains("x_feas")) x_feas = read_vector(base / require<std::string>(j, "x_feas", manifest_path));
  return {ProblemInstance(std::move(A), std::move(b), p, std::move(x_feas)), std::move(x_orig), gen};
}

}  // namespace fracprox
