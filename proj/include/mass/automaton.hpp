#ifndef MASS_AUTOMATON_HPP
#define MASS_AUTOMATON_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mass {

struct Match {
  std::size_t pattern_id = 0;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  std::size_t length() const noexcept { return end - start; }
  auto operator<=>(const Match&) const = default;
};

/// Aho-Corasick automaton over bytes, ASCII case-folded.
///
/// The goto function is completed into a full transition table during
/// construction, so a scan performs exactly one table lookup per input byte.
/// Output sets are merged along failure links, which makes every state report
/// all patterns that end there.
class PatternAutomaton {
 public:
  // Throws EmptyPatternSet for no patterns and InvalidPattern for "".
  explicit PatternAutomaton(std::vector<std::string> patterns);

  // All occurrences, ordered by start, then longer first, then pattern id.
  std::vector<Match> scan(std::string_view text) const;

  const std::vector<std::string>& patterns() const noexcept { return patterns_; }
  std::size_t state_count() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    std::array<std::int32_t, 256> next;
    std::int32_t fail = 0;
    std::vector<std::uint32_t> out;
  };

  std::vector<std::string> patterns_;
  std::vector<Node> nodes_;
};

// True when the characters either side of the match are not letters, digits or
// UTF-8 continuation bytes.
bool on_word_boundary(std::string_view text, const Match& m);

// Leftmost-longest selection of non-overlapping matches from scan() output.
std::vector<Match> longest_nonoverlapping(const std::vector<Match>& ordered);

}  // namespace mass

#endif  // MASS_AUTOMATON_HPP
