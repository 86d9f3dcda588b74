#include "scorecmp/conll.hpp"

#include <algorithm>
#include <sstream>

#include "scorecmp/error.hpp"

namespace scorecmp {

namespace {

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

bool valid_tag_syntax(const std::string& tag) {
    if (tag == "O") return true;
    return tag.size() >= 3 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-';
}

void check_tag(const std::string& tag, std::size_t line_no) {
    if (!valid_tag_syntax(tag))
        throw ParseError("line " + std::to_string(line_no) + ": invalid tag '" + tag + "'");
}

// strict IOB2: I-X must continue a span of the same label
void check_strict(const std::vector<std::string>& tags,
                  const std::vector<std::size_t>& lines, const char* column) {
    for (std::size_t i = 0; i < tags.size(); ++i) {
        const std::string& t = tags[i];
        if (t[0] != 'I') continue;
        const bool continues = i > 0 && tags[i - 1] != "O"
            && tags[i - 1].substr(1) == t.substr(1);
        if (!continues)
            throw ParseError("line " + std::to_string(lines[i]) + ": " + column
                             + " tag '" + t + "' continues no span (strict IOB2)");
    }
}

}  // namespace

std::vector<Sentence> parse_conll(std::istream& in, TagScheme scheme) {
    std::vector<Sentence> sentences;
    Sentence current;
    std::vector<std::string> gold_tags, pred_tags;
    std::vector<std::size_t> tag_lines;

    auto flush = [&]() {
        if (current.tokens.empty()) return;
        if (scheme == TagScheme::iob2_strict) {
            check_strict(gold_tags, tag_lines, "gold");
            check_strict(pred_tags, tag_lines, "predicted");
        }
        sentences.push_back(std::move(current));
        current = {};
        gold_tags.clear();
        pred_tags.clear();
        tag_lines.clear();
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;

        std::istringstream fields(line);
        std::vector<std::string> cols;
        std::string col;
        while (fields >> col) cols.push_back(std::move(col));
        if (cols.size() < 3)
            throw ParseError("line " + std::to_string(line_no)
                             + ": expected at least 3 columns, got "
                             + std::to_string(cols.size()));
        Token tok;
        tok.surface = cols.front();
        tok.gold = cols[cols.size() - 2];
        tok.pred = cols[cols.size() - 1];
        check_tag(tok.gold, line_no);
        check_tag(tok.pred, line_no);
        gold_tags.push_back(tok.gold);
        pred_tags.push_back(tok.pred);
        tag_lines.push_back(line_no);
        current.tokens.push_back(std::move(tok));
    }
    flush();
    if (sentences.empty())
        throw ParseError("empty input: no sentences found");
    return sentences;
}

std::vector<LabeledSpan> extract_spans(std::span<const std::string> tags) {
    std::vector<LabeledSpan> spans;
    bool open = false;
    LabeledSpan span;
    auto close = [&](std::size_t end) {
        if (!open) return;
        span.end = end;
        spans.push_back(span);
        open = false;
    };
    for (std::size_t i = 0; i < tags.size(); ++i) {
        const std::string& t = tags[i];
        if (t == "O") {
            close(i - 1);
            continue;
        }
        const std::string label = t.substr(2);
        if (t[0] == 'B' || !open || span.label != label) {
            close(i - 1);
            span = LabeledSpan{i, i, label};
            open = true;
        }
    }
    close(tags.empty() ? 0 : tags.size() - 1);
    return spans;
}

InstanceStats sentence_stats(const Sentence& s) {
    std::vector<std::string> gold, pred;
    gold.reserve(s.tokens.size());
    pred.reserve(s.tokens.size());
    for (const auto& t : s.tokens) {
        gold.push_back(t.gold);
        pred.push_back(t.pred);
    }
    auto gs = extract_spans(gold);
    auto ps = extract_spans(pred);
    std::sort(gs.begin(), gs.end());
    std::sort(ps.begin(), ps.end());
    std::vector<LabeledSpan> both;
    std::set_intersection(gs.begin(), gs.end(), ps.begin(), ps.end(),
                          std::back_inserter(both));
    const auto tp = static_cast<std::uint32_t>(both.size());
    return InstanceStats::spans(tp,
                                static_cast<std::uint32_t>(ps.size()) - tp,
                                static_cast<std::uint32_t>(gs.size()) - tp);
}

}  // namespace scorecmp
