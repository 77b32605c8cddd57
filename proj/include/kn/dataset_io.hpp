#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kn/gram.hpp"
#include "kn/learning.hpp"

namespace kn {

// Leading '# key=value' lines carried by every CSV this project writes.
using MetadataHeader = std::map<std::string, std::string>;

// Matrix CSV: metadata lines, one header row of column names, then decimal
// float rows. Values are written with 17 significant digits so doubles
// round-trip exactly.
void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& column_names,
                      const MetadataHeader& metadata);

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path,
                                std::vector<std::string>* column_names = nullptr,
                                MetadataHeader* metadata = nullptr);

// A dataset is a directory of states.csv, policy_params.csv, successors.csv,
// state_scales.csv.
void save_dataset(const std::filesystem::path& dir, const SnapshotDataset& data,
                  const MetadataHeader& metadata);
SnapshotDataset load_dataset(const std::filesystem::path& dir);

// Single-file operator: method metadata, dataset directory reference, and the
// coefficient matrix as a CSV block. Loading re-reads the dataset and
// reassembles the Gram matrices, reproducing predictions bitwise.
void save_operator(const std::filesystem::path& path, const LearnedOperator& op,
                   const std::string& dataset_ref,
                   const MetadataHeader& metadata);
LearnedOperator load_operator(const std::filesystem::path& path);

// 64-bit FNV-1a, used for config hashes in metadata headers.
std::uint64_t fnv1a_hash(const std::string& text);

std::string format_double(double v);

}  // namespace kn
