#include "linkblend/table_io.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "linkblend/errors.hpp"
#include "linkblend/format.hpp"

namespace linkblend {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view strip_cr(std::string_view sv) {
  if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
  return sv;
}

}  // namespace

ScoreTable read_score_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("score table: missing header row");
  const auto header = split_tabs(strip_cr(line));
  if (header.size() < 4 || header[0] != "src" || header[1] != "dst" || header[2] != "label")
    throw ParseError("score table: header must start with src\\tdst\\tlabel and name >=1 model");

  ScoreTable table;
  for (std::size_t i = 3; i < header.size(); ++i) table.model_names.emplace_back(header[i]);
  table.columns.resize(table.model_names.size());

  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    const auto sv = strip_cr(line);
    if (sv.empty()) continue;
    const auto fields = split_tabs(sv);
    const std::string ctx = "score table row " + std::to_string(row_no);
    if (fields.size() != header.size())
      throw ParseError(ctx + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    const long long u = parse_integer(fields[0], ctx);
    const long long v = parse_integer(fields[1], ctx);
    if (u < 0 || v < 0) throw ParseError(ctx + ": negative node id");
    const long long label = parse_integer(fields[2], ctx);
    if (label != 0 && label != 1) throw ParseError(ctx + ": label must be 0 or 1");
    table.pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    table.labels.push_back(static_cast<int>(label));
    for (std::size_t m = 0; m < table.columns.size(); ++m)
      table.columns[m].push_back(parse_double(fields[3 + m], ctx));
  }

  try {
    table.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("score table: ") + e.what());
  }
  return table;
}

void write_score_table(std::ostream& out, const ScoreTable& table) {
  table.validate();
  out << "src\tdst\tlabel";
  for (const auto& name : table.model_names) out << "\t" << name;
  out << "\n";
  for (std::size_t i = 0; i < table.n_rows(); ++i) {
    out << table.pairs[i].first << "\t" << table.pairs[i].second << "\t" << table.labels[i];
    for (const auto& col : table.columns) out << "\t" << format_double(col[i]);
    out << "\n";
  }
}

NamedWeights read_weights_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("weights file: missing header row");
  {
    const auto header = split_tabs(strip_cr(line));
    if (header.size() != 2 || header[0] != "model" || header[1] != "weight")
      throw ParseError("weights file: header must be model\\tweight");
  }

  NamedWeights named;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    const auto sv = strip_cr(line);
    if (sv.empty()) continue;
    const auto fields = split_tabs(sv);
    const std::string ctx = "weights file row " + std::to_string(row_no);
    if (fields.size() != 2) throw ParseError(ctx + ": expected model\\tweight");
    named.model_names.emplace_back(fields[0]);
    named.weights.weights.push_back(parse_double(fields[1], ctx));
  }
  if (named.model_names.empty()) throw ParseError("weights file: no weights");
  try {
    named.weights.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("weights file: ") + e.what());
  }
  return named;
}

void write_weights_tsv(std::ostream& out, const NamedWeights& named) {
  out << "model\tweight\n";
  for (std::size_t i = 0; i < named.model_names.size(); ++i)
    out << named.model_names[i] << "\t" << format_double(named.weights.weights[i]) << "\n";
}

}  // namespace linkblend
