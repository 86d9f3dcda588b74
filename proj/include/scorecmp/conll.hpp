#pragma once

#include <compare>
#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "scorecmp/stats.hpp"

// CoNLL column-format parsing and span-based scoring.
//
// Input files are UTF-8 text, one token per line with whitespace-separated
// columns: the surface form first, the gold tag and the predicted tag as the
// last two columns (extra feature columns in between are ignored). Blank
// lines separate sentences; lines starting with '#' are comments.

namespace scorecmp {

struct Token {
    std::string surface;
    std::string gold;
    std::string pred;
};

struct Sentence {
    std::vector<Token> tokens;
};

// iob2_strict rejects I-X tags without a preceding B-X/I-X of the same
// label; bio_lenient follows the conlleval convention where such a tag
// opens a new span.
enum class TagScheme { iob2_strict, bio_lenient };

struct LabeledSpan {
    std::size_t start = 0;  // first token index
    std::size_t end = 0;    // last token index, inclusive
    std::string label;

    auto operator<=>(const LabeledSpan&) const = default;
};

std::vector<Sentence> parse_conll(std::istream& in, TagScheme scheme);

// Maximal spans of a valid B-/I-/O tag sequence, conlleval semantics.
std::vector<LabeledSpan> extract_spans(std::span<const std::string> tags);

// TP/FP/FN of predicted vs. gold spans under exact boundary+label match.
InstanceStats sentence_stats(const Sentence& s);

}  // namespace scorecmp
