#pragma once
// Root data, words in signed simple roots, elementary seeds J(a) and word seeds J(D),
// Weyl groups and Hecke (Demazure) images.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clusterx/amalgamation.hpp"
#include "clusterx/seed.hpp"

namespace cx {

struct RootDatum {
  std::vector<std::string> roots;
  std::vector<std::vector<long>> cartan;  // cartan[a][b] = <alpha_a, alpha_b^vee>
  std::vector<long> d;

  std::size_t rank() const { return roots.size(); }
  int index(const std::string& root) const;  // throws when absent
  long hat(std::size_t a, std::size_t b) const { return cartan[a][b] * d[b]; }
};

// "A1".."A4", "B2", "C2", "B3", "D4", "G2". Roots are named a, b, c, d.
RootDatum root_datum_preset(const std::string& type);
std::vector<std::string> validate(const RootDatum& rd);
// True for a chain a-b-c... of simply laced type A in root order.
bool is_type_A(const RootDatum& rd);

struct Letter {
  int root = 0;
  int sign = 1;  // +1 for alpha, -1 for alpha-bar
  friend bool operator==(const Letter& x, const Letter& y) { return x.root == y.root && x.sign == y.sign; }
};
using Word = std::vector<Letter>;

// Letters separated by spaces; a leading '-' marks a negative root: "a -b -a -a b".
Word parse_word(const RootDatum& rd, const std::string& text);
std::string word_str(const RootDatum& rd, const Word& w);
std::vector<long> letter_counts(const RootDatum& rd, const Word& w);

// Vertex (root, index) of a word seed.
std::string vertex_label(const std::string& root, long index);

Seed elementary_seed(const RootDatum& rd, const Letter& letter);
Seed word_seed_direct(const RootDatum& rd, const Word& w);
Seed word_seed_amalgamated(const RootDatum& rd, const Word& w);
inline Seed word_seed(const RootDatum& rd, const Word& w) { return word_seed_direct(rd, w); }

// Gluing of J(A) and J(B) along the last vertices of A and first vertices of B, landing on
// the labels of J(AB). glued_interior lists the glued vertices that are not extremal in AB.
GluingData concatenation_gluing(const RootDatum& rd, const Word& A, const Word& B,
                                std::vector<std::string>* glued_interior = nullptr);

struct EquivalenceReport {
  bool ok = true;
  std::string diff;
};
EquivalenceReport check_equivalence(const RootDatum& rd, const Word& w);

// Finite Weyl group realized by simple reflections on the root lattice.
class WeylGroup {
 public:
  explicit WeylGroup(const RootDatum& rd, std::size_t max_size = 100000);
  std::size_t size() const { return mats_.size(); }
  std::size_t identity() const { return 0; }
  int length(std::size_t w) const { return len_[w]; }
  // Lexicographically least reduced word in root indices.
  const std::vector<int>& reduced_word(std::size_t w) const { return word_[w]; }
  std::size_t times_generator(std::size_t w, int j) const { return right_[w][j]; }
  std::size_t longest() const;

 private:
  std::vector<std::vector<long>> mats_;  // flattened rank x rank matrices
  std::vector<int> len_;
  std::vector<std::vector<int>> word_;
  std::vector<std::vector<std::size_t>> right_;
};

struct HeckeImage {
  std::size_t plus = 0, minus = 0;
  friend bool operator==(const HeckeImage& x, const HeckeImage& y) { return x.plus == y.plus && x.minus == y.minus; }
};
HeckeImage hecke_image(const WeylGroup& W, const Word& w);
Word reduced_representative(const WeylGroup& W, const HeckeImage& h);

}  // namespace cx
