#ifndef LINKBLEND_TABLE_IO_HPP
#define LINKBLEND_TABLE_IO_HPP

#include <iosfwd>
#include <string>

#include "linkblend/ensemble.hpp"

namespace linkblend {

// Score-table TSV: header "src\tdst\tlabel\t<model>..." then one row per
// pair. Scores are written as shortest-round-trip decimals, so
// write -> read is lossless.
ScoreTable read_score_table(std::istream& in);
void write_score_table(std::ostream& out, const ScoreTable& table);

// weights.tsv: "model\tweight" header, one model per line.
struct NamedWeights {
  std::vector<std::string> model_names;
  WeightVector weights;
};
NamedWeights read_weights_tsv(std::istream& in);
void write_weights_tsv(std::ostream& out, const NamedWeights& named);

}  // namespace linkblend

#endif  // LINKBLEND_TABLE_IO_HPP
