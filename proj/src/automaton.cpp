#include "mass/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <queue>

#include "mass/error.hpp"

namespace mass {
namespace {

unsigned char fold(char c) {
  return static_cast<unsigned char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

}  // namespace

PatternAutomaton::PatternAutomaton(std::vector<std::string> patterns) : patterns_(std::move(patterns)) {
  if (patterns_.empty()) throw Error(ErrorKind::EmptyPatternSet, "no patterns to compile");

  auto new_node = [this] {
    Node n;
    n.next.fill(-1);
    nodes_.push_back(std::move(n));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  };
  new_node();

  for (std::size_t id = 0; id < patterns_.size(); ++id) {
    auto& pattern = patterns_[id];
    if (pattern.empty()) throw Error(ErrorKind::InvalidPattern, "empty pattern");
    for (char& c : pattern) c = static_cast<char>(fold(c));
    std::int32_t state = 0;
    for (char c : pattern) {
      auto b = static_cast<unsigned char>(c);
      if (nodes_[state].next[b] < 0) {
        auto child = new_node();
        nodes_[state].next[b] = child;
      }
      state = nodes_[state].next[b];
    }
    nodes_[state].out.push_back(static_cast<std::uint32_t>(id));
  }

  std::queue<std::int32_t> queue;
  for (auto& target : nodes_[0].next) {
    if (target < 0) {
      target = 0;
    } else {
      nodes_[target].fail = 0;
      queue.push(target);
    }
  }
  while (!queue.empty()) {
    auto state = queue.front();
    queue.pop();
    auto fail = nodes_[state].fail;
    auto& inherited = nodes_[fail].out;
    nodes_[state].out.insert(nodes_[state].out.end(), inherited.begin(), inherited.end());
    for (std::size_t b = 0; b < 256; ++b) {
      auto child = nodes_[state].next[b];
      if (child < 0) {
        nodes_[state].next[b] = nodes_[fail].next[b];
      } else {
        nodes_[child].fail = nodes_[fail].next[b];
        queue.push(child);
      }
    }
  }
}

std::vector<Match> PatternAutomaton::scan(std::string_view text) const {
  std::vector<Match> matches;
  std::int32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    state = nodes_[state].next[fold(text[i])];
    for (auto id : nodes_[state].out) {
      auto len = patterns_[id].size();
      matches.push_back({id, i + 1 - len, i + 1});
    }
  }
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end > b.end;
    return a.pattern_id < b.pattern_id;
  });
  return matches;
}

bool on_word_boundary(std::string_view text, const Match& m) {
  bool left = m.start == 0 || !is_word_byte(text[m.start - 1]);
  bool right = m.end >= text.size() || !is_word_byte(text[m.end]);
  return left && right;
}

std::vector<Match> longest_nonoverlapping(const std::vector<Match>& ordered) {
  std::vector<Match> out;
  std::size_t covered = 0;
  for (const auto& m : ordered) {
    if (!out.empty() && m.start < covered) continue;
    out.push_back(m);
    covered = m.end;
  }
  return out;
}

}  // namespace mass
