#include "rauzy/permutation.hpp"

#include "rauzy/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace rauzy {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::vector<Letter> positions_of(std::span<const Letter> row,
                                 std::size_t n) {
  std::vector<Letter> pos(n, Letter(0));
  std::vector<bool> seen(n, false);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] >= n || seen[row[j]])
      throw InvalidArgument("row is not a permutation of the alphabet");
    seen[row[j]] = true;
    pos[row[j]] = static_cast<Letter>(j);
  }
  return pos;
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok)
    out.push_back(tok);
  return out;
}

} // namespace

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.size() < 2)
    throw ParseError("alphabet needs at least 2 letters");
  if (tokens_.size() > kMaxAlphabetSize)
    throw ParseError("alphabet larger than " +
                     std::to_string(kMaxAlphabetSize) + " letters");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const auto &t = tokens_[i];
    if (t.empty() || has_whitespace(t))
      throw ParseError("invalid token '" + t + "'");
    if (!index_.emplace(t, static_cast<Letter>(i)).second)
      throw ParseError("duplicate token '" + t + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

LabeledPermutation::LabeledPermutation(AlphabetPtr alphabet,
                                       std::vector<Letter> top,
                                       std::vector<Letter> bottom)
    : alphabet_(std::move(alphabet)), top_(std::move(top)),
      bottom_(std::move(bottom)) {
  if (!alphabet_)
    throw InvalidArgument("permutation without alphabet");
  const std::size_t n = alphabet_->size();
  if (top_.size() != n || bottom_.size() != n)
    throw InvalidArgument("row length differs from alphabet size");
  top_pos_ = positions_of(top_, n);
  bottom_pos_ = positions_of(bottom_, n);
}

std::string LabeledPermutation::to_string() const {
  std::string out;
  auto row = [&](std::span<const Letter> r) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j)
        out += ' ';
      out += alphabet_->token(r[j]);
    }
  };
  row(top_);
  out += '\n';
  row(bottom_);
  return out;
}

bool LabeledPermutation::operator==(const LabeledPermutation &other) const {
  if (top_ != other.top_ || bottom_ != other.bottom_)
    return false;
  return alphabet_ == other.alphabet_ || *alphabet_ == *other.alphabet_;
}

Renumbering::Renumbering(std::vector<Letter> image, AlphabetPtr target)
    : image_(std::move(image)), target_(std::move(target)) {
  std::vector<bool> seen(image_.size(), false);
  for (Letter l : image_) {
    if (l >= image_.size() || seen[l])
      throw InvalidArgument("renumbering is not a bijection");
    seen[l] = true;
  }
  if (target_ && target_->size() != image_.size())
    throw InvalidArgument("renumbering target alphabet has wrong size");
}

Renumbering Renumbering::identity(std::size_t n) {
  std::vector<Letter> img(n);
  std::iota(img.begin(), img.end(), Letter(0));
  return Renumbering(std::move(img));
}

Renumbering Renumbering::from_tokens(
    const Alphabet &alphabet,
    const std::vector<std::pair<std::string, std::string>> &pairs) {
  std::vector<Letter> img(alphabet.size());
  std::iota(img.begin(), img.end(), Letter(0));
  for (const auto &[from, to] : pairs) {
    auto a = alphabet.find(from), b = alphabet.find(to);
    if (!a || !b)
      throw InvalidArgument("unknown token in renumbering: " + from + "->" +
                            to);
    img[*a] = *b;
  }
  return Renumbering(std::move(img));
}

Renumbering Renumbering::compose(const Renumbering &other) const {
  if (other.size() != size())
    throw InvalidArgument("composing renumberings of different sizes");
  std::vector<Letter> img(size());
  for (std::size_t i = 0; i < size(); ++i)
    img[i] = image_[other.image_[i]];
  return Renumbering(std::move(img), target_);
}

Renumbering Renumbering::inverse() const {
  std::vector<Letter> img(size());
  for (std::size_t i = 0; i < size(); ++i)
    img[image_[i]] = static_cast<Letter>(i);
  return Renumbering(std::move(img));
}

bool Renumbering::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (image_[i] != i)
      return false;
  return true;
}

LabeledPermutation parse_permutation(std::string_view text,
                                     AlphabetPtr alphabet) {
  std::vector<std::vector<std::string>> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#')
      lines.push_back(split_tokens(line));
    start = end + 1;
  }
  if (lines.size() != 2)
    throw ParseError("expected exactly two non-empty lines, got " +
                     std::to_string(lines.size()));
  const auto &top = lines[0], &bottom = lines[1];
  if (top.size() < 2)
    throw ParseError("a permutation needs at least 2 letters");
  for (const auto &row : lines) {
    std::unordered_set<std::string> seen;
    for (const auto &t : row)
      if (!seen.insert(t).second)
        throw ParseError("duplicate token '" + t + "' in a line");
  }
  if (top.size() != bottom.size() ||
      std::unordered_set<std::string>(top.begin(), top.end()) !=
          std::unordered_set<std::string>(bottom.begin(), bottom.end()))
    throw ParseError("top and bottom lines use different tokens");

  if (!alphabet)
    alphabet = std::make_shared<const Alphabet>(top);
  else if (alphabet->size() != top.size())
    throw ParseError("permutation does not use the whole alphabet");

  auto resolve = [&](const std::vector<std::string> &row) {
    std::vector<Letter> out;
    out.reserve(row.size());
    for (const auto &t : row) {
      auto l = alphabet->find(t);
      if (!l)
        throw ParseError("token '" + t + "' not in alphabet");
      out.push_back(*l);
    }
    return out;
  };
  return LabeledPermutation(alphabet, resolve(top), resolve(bottom));
}

namespace detail {

bool rows_irreducible(std::span<const Letter> rows) {
  const std::size_t d = rows.size() / 2;
  // A prefix of length j+1 has equal letter sets iff every letter seen so far
  // has been seen on both rows.
  std::vector<std::uint8_t> seen(d, 0);
  std::size_t both = 0;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    if ((seen[rows[j]] |= 1) == 3)
      ++both;
    if ((seen[rows[d + j]] |= 2) == 3)
      ++both;
    if (both == j + 1)
      return false;
  }
  return true;
}

bool apply_move(std::span<const Letter> rows, MoveKind kind,
                std::span<Letter> out) {
  const std::size_t d = rows.size() / 2;
  // The winner row keeps its letters; the loser row reinserts its last letter
  // right after the winner's last letter.
  const std::size_t win = kind == MoveKind::Top ? 0 : d;
  const std::size_t lose = kind == MoveKind::Top ? d : 0;
  const Letter winner = rows[win + d - 1];
  const Letter loser = rows[lose + d - 1];
  if (winner == loser)
    return false;
  std::size_t k = 0;
  while (rows[lose + k] != winner)
    ++k;
  std::copy_n(rows.begin() + win, d, out.begin() + win);
  auto src = rows.begin() + lose;
  auto dst = out.begin() + lose;
  std::copy_n(src, k + 1, dst);
  dst[k + 1] = loser;
  std::copy(src + k + 1, src + d - 1, dst + k + 2);
  return true;
}

} // namespace detail

bool is_irreducible(const LabeledPermutation &p) {
  std::vector<Letter> rows(p.top().begin(), p.top().end());
  rows.insert(rows.end(), p.bottom().begin(), p.bottom().end());
  return detail::rows_irreducible(rows);
}

LabeledPermutation rauzy_move(const LabeledPermutation &p, MoveKind kind) {
  if (!is_irreducible(p))
    throw ReducibleError("Rauzy move on a reducible permutation");
  const std::size_t d = p.size();
  std::vector<Letter> rows(p.top().begin(), p.top().end());
  rows.insert(rows.end(), p.bottom().begin(), p.bottom().end());
  std::vector<Letter> out(2 * d);
  if (!detail::apply_move(rows, kind, out))
    throw ReducibleError("Rauzy move undefined: last letters coincide");
  return LabeledPermutation(p.alphabet(),
                            std::vector<Letter>(out.begin(), out.begin() + d),
                            std::vector<Letter>(out.begin() + d, out.end()));
}

LabeledPermutation inverse_rauzy_move(const LabeledPermutation &p,
                                      MoveKind kind) {
  const std::size_t d = p.size();
  std::vector<Letter> fixed_row(kind == MoveKind::Top ? p.top().begin()
                                                      : p.bottom().begin(),
                                kind == MoveKind::Top ? p.top().end()
                                                      : p.bottom().end());
  std::vector<Letter> moved_row(kind == MoveKind::Top ? p.bottom().begin()
                                                      : p.top().begin(),
                                kind == MoveKind::Top ? p.bottom().end()
                                                      : p.top().end());
  const Letter winner = fixed_row.back();
  std::size_t k = 0;
  while (moved_row[k] != winner)
    ++k;
  if (k + 1 >= d)
    throw InvalidArgument("permutation is not in the image of the move");
  const Letter loser = moved_row[k + 1];
  moved_row.erase(moved_row.begin() + static_cast<std::ptrdiff_t>(k + 1));
  moved_row.push_back(loser);
  LabeledPermutation pre =
      kind == MoveKind::Top
          ? LabeledPermutation(p.alphabet(), fixed_row, moved_row)
          : LabeledPermutation(p.alphabet(), moved_row, fixed_row);
  if (!is_irreducible(pre))
    throw InvalidArgument("preimage under the move is reducible");
  return pre;
}

LabeledPermutation renumber(const LabeledPermutation &p, const Renumbering &f) {
  if (f.size() != p.size())
    throw InvalidArgument("renumbering size differs from alphabet size");
  std::vector<Letter> top(p.size()), bottom(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    top[j] = f(p.top()[j]);
    bottom[j] = f(p.bottom()[j]);
  }
  return LabeledPermutation(f.target() ? f.target() : p.alphabet(),
                            std::move(top), std::move(bottom));
}

std::string canonical_encoding(const LabeledPermutation &p) {
  std::string out;
  out.reserve(2 * p.size() + 1);
  out.push_back(static_cast<char>(p.size()));
  for (Letter l : p.top())
    out.push_back(static_cast<char>(l));
  for (Letter l : p.bottom())
    out.push_back(static_cast<char>(l));
  return out;
}

} // namespace rauzy
