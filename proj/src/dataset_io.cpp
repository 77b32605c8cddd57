#include "kn/dataset_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kn/errors.hpp"

namespace kn {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void write_metadata(std::ofstream& out, const MetadataHeader& metadata) {
  for (const auto& [key, value] : metadata)
    out << "# " << key << "=" << value << "\n";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_double(const std::string& s, const fs::path& path) {
  double v = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc())
    throw InputError("csv: bad numeric cell '" + s + "' in " + path.string());
  return v;
}

}  // namespace

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& column_names,
                      const MetadataHeader& metadata) {
  if (static_cast<Eigen::Index>(column_names.size()) != matrix.cols())
    throw InputError("csv: column name count mismatch for " + path.string());
  std::ofstream out(path);
  if (!out) throw InputError("csv: cannot open " + path.string() + " for writing");
  write_metadata(out, metadata);
  for (size_t j = 0; j < column_names.size(); ++j)
    out << (j ? "," : "") << column_names[j];
  out << "\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j)
      out << (j ? "," : "") << format_double(matrix(i, j));
    out << "\n";
  }
}

Eigen::MatrixXd read_matrix_csv(const fs::path& path,
                                std::vector<std::string>* column_names,
                                MetadataHeader* metadata) {
  std::ifstream in(path);
  if (!in) throw InputError("csv: cannot open " + path.string());

  std::string line;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  size_t cols = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (metadata) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
          std::string key = line.substr(1, eq - 1);
          while (!key.empty() && key.front() == ' ') key.erase(key.begin());
          (*metadata)[key] = line.substr(eq + 1);
        }
      }
      continue;
    }
    if (!have_header) {
      const auto names = split_csv_line(line);
      cols = names.size();
      if (column_names) *column_names = names;
      have_header = true;
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != cols)
      throw InputError("csv: ragged row in " + path.string());
    std::vector<double> row(cols);
    for (size_t j = 0; j < cols; ++j) row[j] = parse_double(cells[j], path);
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InputError("csv: missing header row in " + path.string());

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

namespace {

std::vector<std::string> numbered_names(const std::string& prefix, Eigen::Index n) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < n; ++j)
    names.push_back(prefix + std::to_string(j + 1));
  return names;
}

}  // namespace

void save_dataset(const fs::path& dir, const SnapshotDataset& data,
                  const MetadataHeader& metadata) {
  fs::create_directories(dir);
  write_matrix_csv(dir / "states.csv", data.states,
                   numbered_names("x", data.state_dim()), metadata);
  write_matrix_csv(dir / "policy_params.csv", data.policy_params,
                   numbered_names("alpha", data.param_dim()), metadata);
  write_matrix_csv(dir / "successors.csv", data.successors,
                   numbered_names("y", data.state_dim()), metadata);
  write_matrix_csv(dir / "state_scales.csv", data.state_scales.transpose(),
                   numbered_names("scale", data.state_dim()), metadata);
}

SnapshotDataset load_dataset(const fs::path& dir) {
  Eigen::MatrixXd states = read_matrix_csv(dir / "states.csv");
  Eigen::MatrixXd params = read_matrix_csv(dir / "policy_params.csv");
  Eigen::MatrixXd successors = read_matrix_csv(dir / "successors.csv");
  Eigen::MatrixXd scales = read_matrix_csv(dir / "state_scales.csv");
  return SnapshotDataset(std::move(states), std::move(params),
                         std::move(successors), scales.row(0).transpose());
}

void save_operator(const fs::path& path, const LearnedOperator& op,
                   const std::string& dataset_ref,
                   const MetadataHeader& metadata) {
  std::ofstream out(path);
  if (!out) throw InputError("operator: cannot open " + path.string());
  write_metadata(out, metadata);
  out << "format=knop-operator-v1\n";
  out << "dataset=" << dataset_ref << "\n";
  switch (op.method.kind) {
    case FitMethod::Kind::KernelEdmd:
      out << "method=kernel_edmd\n";
      out << "jitter=" << format_double(op.method.jitter) << "\n";
      break;
    case FitMethod::Kind::ReducedRank:
      out << "method=reduced_rank\n";
      out << "beta=" << format_double(op.method.beta) << "\n";
      out << "rank=" << op.method.rank << "\n";
      break;
  }
  if (op.state_kernel.family() == RadialKernel::Family::Wendland)
    out << "state_kernel=wendland," << op.state_kernel.wendland_n() << ","
        << op.state_kernel.wendland_k() << ","
        << format_double(op.state_kernel.bandwidth()) << "\n";
  else
    out << "state_kernel=gaussian," << format_double(op.state_kernel.bandwidth())
        << "\n";
  out << "policy_kernel=gaussian," << format_double(op.policy_kernel.bandwidth())
      << "," << op.policy_kernel.parameter_dimension() << "\n";
  out << "m=" << op.size() << "\n";
  out << "theta:\n";
  for (Eigen::Index i = 0; i < op.theta.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.theta.cols(); ++j)
      out << (j ? "," : "") << format_double(op.theta(i, j));
    out << "\n";
  }
}

LearnedOperator load_operator(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("operator: cannot open " + path.string());

  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "theta:") break;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("operator: malformed line '" + line + "'");
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (fields["format"] != "knop-operator-v1")
    throw InputError("operator: unknown format in " + path.string());

  const int m = std::stoi(fields.at("m"));
  Eigen::MatrixXd theta(m, m);
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw InputError("operator: truncated theta block");
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != m)
      throw InputError("operator: ragged theta row");
    for (int j = 0; j < m; ++j) theta(i, j) = parse_double(cells[j], path);
  }

  const fs::path dataset_dir =
      fs::path(fields.at("dataset")).is_absolute()
          ? fs::path(fields.at("dataset"))
          : path.parent_path() / fields.at("dataset");
  auto data = std::make_shared<SnapshotDataset>(load_dataset(dataset_dir));

  const auto sk = split_csv_line(fields.at("state_kernel"));
  RadialKernel kx =
      sk.at(0) == "wendland"
          ? RadialKernel::wendland(std::stoi(sk.at(1)), std::stoi(sk.at(2)),
                                   std::stod(sk.at(3)))
          : RadialKernel::gaussian(std::stod(sk.at(1)));
  const auto pk = split_csv_line(fields.at("policy_kernel"));
  PolicyKernel ku(std::stod(pk.at(1)), std::stoi(pk.at(2)));

  FitMethod method;
  if (fields.at("method") == "kernel_edmd") {
    method.kind = FitMethod::Kind::KernelEdmd;
    method.jitter = std::stod(fields.at("jitter"));
  } else if (fields.at("method") == "reduced_rank") {
    method.kind = FitMethod::Kind::ReducedRank;
    method.beta = std::stod(fields.at("beta"));
    method.rank = std::stoi(fields.at("rank"));
  } else {
    throw InputError("operator: unknown method '" + fields.at("method") + "'");
  }

  auto grams = std::make_shared<GramSet>(assemble(*data, kx, ku));
  return LearnedOperator{std::move(theta), std::move(data), std::move(grams),
                         kx, ku, method};
}

}  // namespace kn
