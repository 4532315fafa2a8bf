#include "amh/sparse_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amh/csv.hpp"
#include "amh/errors.hpp"
#include "amh/rng.hpp"

namespace amh {

SparseBinarySet SparseBinarySet::from_sorted_unique(std::vector<std::uint32_t> idx) {
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i - 1] >= idx[i]) {
      throw ValidationError("indices must be strictly increasing");
    }
  }
  SparseBinarySet s;
  s.idx_ = std::move(idx);
  return s;
}

SparseBinarySet SparseBinarySet::from_unsorted(std::vector<std::uint32_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  SparseBinarySet s;
  s.idx_ = std::move(idx);
  return s;
}

bool SparseBinarySet::contains(std::uint32_t i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

std::uint32_t SparseBinarySet::max_index() const {
  if (idx_.empty()) throw EmptyInputError("max_index of an empty set");
  return idx_.back();
}

std::uint32_t intersection_size(const SparseBinarySet& x, const SparseBinarySet& y) {
  const auto& a = x.indices();
  const auto& b = y.indices();
  std::size_t i = 0, j = 0;
  std::uint32_t count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::uint64_t union_size(const SparseBinarySet& x, const SparseBinarySet& y) {
  return static_cast<std::uint64_t>(x.cardinality()) + y.cardinality() -
         intersection_size(x, y);
}

double resemblance(const SparseBinarySet& x, const SparseBinarySet& y) {
  std::uint64_t u = union_size(x, y);
  if (u == 0) return 1.0;
  return static_cast<double>(intersection_size(x, y)) / static_cast<double>(u);
}

Dataset::Dataset(std::uint32_t universe_dim, std::vector<DatasetRecord> records) {
  if (universe_dim == 0) throw ArgumentError("universe dimension must be positive");
  dim_ = universe_dim;
  records_.reserve(records.size());
  for (auto& r : records) add_record(r.id, std::move(r.set));
}

void Dataset::add_record(std::int64_t id, SparseBinarySet set) {
  if (!ids_.insert(id).second) {
    throw ValidationError("duplicate record id " + std::to_string(id));
  }
  if (!set.empty() && set.max_index() >= dim_) {
    ids_.erase(id);
    throw ValidationError("record " + std::to_string(id) + " has index " +
                          std::to_string(set.max_index()) + " outside universe of size " +
                          std::to_string(dim_));
  }
  max_card_ = std::max(max_card_, static_cast<std::uint32_t>(set.cardinality()));
  records_.push_back(DatasetRecord{id, std::move(set)});
}

namespace {

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::uint64_t parse_u64_token(const std::string& tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a non-negative integer, got '" + tok + "'", line_no);
  }
  return value;
}

std::vector<std::uint32_t> parse_index_list_line(const std::string& line,
                                                 std::size_t line_no) {
  std::istringstream in(line);
  std::vector<std::uint32_t> idx;
  std::string tok;
  while (in >> tok) {
    std::uint64_t v = parse_u64_token(tok, line_no);
    if (v > 0xFFFFFFFFULL) {
      throw ParseError("index " + tok + " exceeds the supported universe", line_no);
    }
    idx.push_back(static_cast<std::uint32_t>(v));
  }
  return idx;
}

std::vector<std::uint32_t> parse_svm_line(const std::string& line, std::size_t line_no,
                                          bool binarize) {
  std::istringstream in(line);
  std::string tok;
  if (!(in >> tok)) return {};  // caller filtered blanks; defensive
  std::vector<std::uint32_t> idx;
  while (in >> tok) {
    std::size_t colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size()) {
      throw ParseError("expected index:value, got '" + tok + "'", line_no);
    }
    std::uint64_t one_based = parse_u64_token(tok.substr(0, colon), line_no);
    if (one_based == 0) {
      throw ParseError("feature indices are 1-based; got index 0", line_no);
    }
    if (one_based > 0x100000000ULL) {
      throw ParseError("index " + tok.substr(0, colon) +
                           " exceeds the supported universe",
                       line_no);
    }
    std::string val_text = tok.substr(colon + 1);
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(val_text.data(), val_text.data() + val_text.size(), value);
    if (ec != std::errc{} || ptr != val_text.data() + val_text.size()) {
      throw ParseError("expected a numeric value, got '" + val_text + "'", line_no);
    }
    bool present;
    if (binarize) {
      present = value != 0.0;
    } else if (value == 0.0) {
      present = false;
    } else if (value == 1.0) {
      present = true;
    } else {
      throw ValidationError("line " + std::to_string(line_no) + ": value " + val_text +
                            " is not binary (pass binarize to coerce)");
    }
    if (present) idx.push_back(static_cast<std::uint32_t>(one_based - 1));
  }
  return idx;
}

}  // namespace

Dataset parse_dataset_text(const std::string& text, const ParseOptions& opts) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<DatasetRecord> records;
  std::uint32_t max_index = 0;
  bool any_index = false;
  std::int64_t next_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::vector<std::uint32_t> idx = opts.format == InputFormat::IndexList
                                         ? parse_index_list_line(line, line_no)
                                         : parse_svm_line(line, line_no, opts.binarize);
    SparseBinarySet set = SparseBinarySet::from_unsorted(std::move(idx));
    if (!set.empty()) {
      any_index = true;
      max_index = std::max(max_index, set.max_index());
    }
    records.push_back(DatasetRecord{next_id++, std::move(set)});
  }
  std::uint32_t dim = any_index ? max_index + 1 : 1;
  if (opts.dim_override) {
    if (*opts.dim_override < dim) {
      throw ValidationError("dimension override " + std::to_string(*opts.dim_override) +
                            " does not cover the largest index " +
                            std::to_string(max_index));
    }
    dim = *opts.dim_override;
  }
  return Dataset(dim, std::move(records));
}

Dataset parse_dataset(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_text(buf.str(), opts);
}

std::string dataset_to_index_list(const Dataset& d) {
  std::ostringstream out;
  for (const auto& r : d.records()) {
    if (r.set.empty()) {
      throw ValidationError("record " + std::to_string(r.id) +
                            " is empty and has no index-list representation");
    }
    const auto& idx = r.set.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) out << ' ';
      out << idx[i];
    }
    out << '\n';
  }
  return out.str();
}

void write_dataset(const Dataset& d, const std::string& path) {
  std::string text = dataset_to_index_list(d);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

DatasetStats compute_stats(const Dataset& d) {
  DatasetStats s;
  s.n_records = d.size();
  s.universe_dim = d.universe_dim();
  s.max_cardinality = d.max_cardinality();
  if (d.size() == 0) return s;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& r : d.records()) {
    double f = static_cast<double>(r.set.cardinality());
    sum += f;
    sum_sq += f * f;
  }
  double n = static_cast<double>(d.size());
  s.mean_cardinality = sum / n;
  double var = sum_sq / n - s.mean_cardinality * s.mean_cardinality;
  s.std_cardinality = std::sqrt(std::max(0.0, var));
  return s;
}

std::string stats_to_csv(const DatasetStats& s) {
  std::ostringstream out;
  out << "n,D,mean,std,M\n";
  out << s.n_records << ',' << s.universe_dim << ',' << csv::format_double(s.mean_cardinality)
      << ',' << csv::format_double(s.std_cardinality) << ',' << s.max_cardinality << '\n';
  return out.str();
}

PartitionResult partition_dataset(const Dataset& d, std::size_t n_query,
                                  std::uint64_t seed) {
  if (n_query == 0 || n_query >= d.size()) {
    throw ArgumentError("query count must satisfy 0 < n_query < n_records");
  }
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng::Sequence seq(seed, rng::kTagPartition);
  rng::shuffle(order, seq);

  std::vector<DatasetRecord> query_records, train_records;
  query_records.reserve(n_query);
  train_records.reserve(d.size() - n_query);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const DatasetRecord& r = d.records()[order[i]];
    (i < n_query ? query_records : train_records).push_back(r);
  }
  PartitionResult result;
  result.train = Dataset(d.universe_dim(), std::move(train_records));
  result.query = Dataset(d.universe_dim(), std::move(query_records));
  return result;
}

}  // namespace amh
