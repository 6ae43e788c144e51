#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rauzy {

/// Interned letter index. Alphabets are limited to 255 letters, which keeps a
/// diagram vertex at 2d bytes.
using Letter = std::uint8_t;
inline constexpr std::size_t kMaxAlphabetSize = 255;

/// An ordered set of distinct tokens with a token <-> index table.
class Alphabet {
public:
  /// Throws ParseError on duplicates, empty tokens, tokens containing
  /// whitespace, fewer than two letters or more than kMaxAlphabetSize.
  explicit Alphabet(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  const std::string &token(Letter l) const { return tokens_.at(l); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  std::optional<Letter> find(std::string_view token) const;

  bool operator==(const Alphabet &other) const {
    return tokens_ == other.tokens_;
  }

private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Letter> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

enum class MoveKind { Top, Bottom };

inline char move_name(MoveKind k) { return k == MoveKind::Top ? 't' : 'b'; }

/// A pair of rows over a shared alphabet. top()[j] is the letter at position
/// j+1 of the top interval, bottom()[j] likewise.
class LabeledPermutation {
public:
  /// Validates that both rows are permutations of the alphabet's letters.
  LabeledPermutation(AlphabetPtr alphabet, std::vector<Letter> top,
                     std::vector<Letter> bottom);

  std::size_t size() const { return top_.size(); }
  const AlphabetPtr &alphabet() const { return alphabet_; }
  std::span<const Letter> top() const { return top_; }
  std::span<const Letter> bottom() const { return bottom_; }

  /// 1-based positions, as pi_t(alpha) and pi_b(alpha).
  std::size_t top_position(Letter l) const { return top_pos_[l] + 1; }
  std::size_t bottom_position(Letter l) const { return bottom_pos_[l] + 1; }

  Letter minus_inf() const { return top_.front(); }
  Letter plus_inf() const { return bottom_.front(); }

  /// Two-line table, tokens separated by single spaces.
  std::string to_string() const;

  bool operator==(const LabeledPermutation &other) const;

private:
  AlphabetPtr alphabet_;
  std::vector<Letter> top_;
  std::vector<Letter> bottom_;
  std::vector<Letter> top_pos_;
  std::vector<Letter> bottom_pos_;
};

/// A bijection of letter indices, optionally into a second alphabet of the
/// same size.
class Renumbering {
public:
  /// Throws InvalidArgument if `image` is not a permutation of 0..n-1.
  explicit Renumbering(std::vector<Letter> image, AlphabetPtr target = nullptr);

  static Renumbering identity(std::size_t n);
  /// Builds a renumbering from token pairs (unlisted tokens are fixed).
  static Renumbering from_tokens(
      const Alphabet &alphabet,
      const std::vector<std::pair<std::string, std::string>> &pairs);

  std::size_t size() const { return image_.size(); }
  Letter operator()(Letter l) const { return image_[l]; }
  std::span<const Letter> image() const { return image_; }
  const AlphabetPtr &target() const { return target_; }

  /// (this * other)(x) = this(other(x)).
  Renumbering compose(const Renumbering &other) const;
  Renumbering inverse() const;
  bool is_identity() const;

  bool operator==(const Renumbering &other) const {
    return image_ == other.image_;
  }

private:
  std::vector<Letter> image_;
  AlphabetPtr target_;
};

/// Parses the two-line table format. Lines starting with '#' and blank lines
/// are skipped. When `alphabet` is given, tokens are resolved against it;
/// otherwise a new alphabet is interned in order of first appearance on the
/// top line.
LabeledPermutation parse_permutation(std::string_view text,
                                     AlphabetPtr alphabet = nullptr);

bool is_irreducible(const LabeledPermutation &p);

/// Combinatorial Rauzy move. Throws ReducibleError if the input is reducible.
LabeledPermutation rauzy_move(const LabeledPermutation &p, MoveKind kind);

/// Preimage of `p` under the move of the given kind. Throws InvalidArgument
/// if `p` has no irreducible preimage.
LabeledPermutation inverse_rauzy_move(const LabeledPermutation &p,
                                      MoveKind kind);

LabeledPermutation renumber(const LabeledPermutation &p, const Renumbering &f);

/// Byte string [d, top..., bottom...]; injective over a fixed alphabet.
std::string canonical_encoding(const LabeledPermutation &p);

// Raw row kernels shared with the diagram enumerator. `rows` holds the top row
// followed by the bottom row (2d letters). They return false when the move is
// undefined (the two last letters coincide).
namespace detail {
bool apply_move(std::span<const Letter> rows, MoveKind kind,
                std::span<Letter> out);
bool rows_irreducible(std::span<const Letter> rows);
} // namespace detail

} // namespace rauzy
