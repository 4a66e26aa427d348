#include "tracelimits/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tracelimits {

Permutation0::Permutation0(std::vector<int> image) : image_(std::move(image)) {
  if (image_.empty()) throw std::invalid_argument("Permutation0: empty image");
  std::vector<char> seen(image_.size(), 0);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v]) {
      throw std::invalid_argument("Permutation0: image is not a bijection");
    }
    seen[v] = 1;
  }
}

Permutation0 Permutation0::identity(int n) {
  std::vector<int> img(n + 1);
  for (int i = 0; i <= n; ++i) img[i] = i;
  return Permutation0(std::move(img));
}

Permutation0 Permutation0::full_cycle(int n) {
  std::vector<int> img(n + 1);
  for (int i = 0; i <= n; ++i) img[i] = (i + 1) % (n + 1);
  return Permutation0(std::move(img));
}

Permutation0 Permutation0::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(n + 1);
  for (int i = 0; i <= n; ++i) img[i] = i;
  std::vector<char> used(n + 1, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int x = c[i];
      if (x < 0 || x > n || used[x]) throw std::invalid_argument("Permutation0: bad cycle element");
      used[x] = 1;
      img[x] = c[(i + 1) % c.size()];
    }
  }
  return Permutation0(std::move(img));
}

Permutation0 Permutation0::parse(std::string_view text, int n) {
  std::vector<std::vector<int>> cycles;
  int max_elem = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw std::invalid_argument("Permutation0::parse: expected '(' in " + std::string(text));
    auto close = text.find(')', i);
    if (close == std::string_view::npos) throw std::invalid_argument("Permutation0::parse: unbalanced");
    std::string_view body = text.substr(i + 1, close - i - 1);
    std::vector<int> cyc;
    bool separated = body.find_first_of(" ,") != std::string_view::npos;
    if (separated) {
      std::string tmp(body);
      std::replace(tmp.begin(), tmp.end(), ',', ' ');
      std::istringstream in(tmp);
      int x;
      while (in >> x) cyc.push_back(x);
    } else {
      for (char d : body) {
        if (!std::isdigit(static_cast<unsigned char>(d))) {
          throw std::invalid_argument("Permutation0::parse: bad digit in " + std::string(text));
        }
        cyc.push_back(d - '0');
      }
    }
    if (cyc.empty()) throw std::invalid_argument("Permutation0::parse: empty cycle");
    for (int x : cyc) max_elem = std::max(max_elem, x);
    cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  if (n < 0) n = max_elem;
  if (max_elem > n) throw std::invalid_argument("Permutation0::parse: element exceeds n");
  return from_cycles(n, cycles);
}

std::vector<std::vector<int>> Permutation0::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(image_.size(), 0);
  for (int s = 0; s <= n(); ++s) {
    if (seen[s]) continue;
    std::vector<int> c;
    for (int x = s; !seen[x]; x = image_[x]) {
      seen[x] = 1;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> Permutation0::zero_cycle() const {
  std::vector<int> c{0};
  for (int x = image_[0]; x != 0; x = image_[x]) c.push_back(x);
  return c;
}

bool Permutation0::is_identity() const {
  for (int i = 0; i <= n(); ++i)
    if (image_[i] != i) return false;
  return true;
}

std::string Permutation0::to_string() const {
  const bool wide = n() >= 10;
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (wide && i > 0) s += ' ';
      s += std::to_string(c[i]);
    }
    s += ')';
  }
  return s;
}

Permutation0 compose(const Permutation0& p, const Permutation0& q) {
  if (p.n() != q.n()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> img(p.n() + 1);
  for (int i = 0; i <= p.n(); ++i) img[i] = p(q(i));
  return Permutation0(std::move(img));
}

Permutation0 inverse(const Permutation0& p) {
  std::vector<int> img(p.n() + 1);
  for (int i = 0; i <= p.n(); ++i) img[p(i)] = i;
  return Permutation0(std::move(img));
}

int cycle_count(const Permutation0& p) {
  return static_cast<int>(p.cycles().size());
}

int cyc0(const Permutation0& p) {
  return cycle_count(p) - 1;
}

Permutation0 restrict_relabel(const Permutation0& p, const std::vector<int>& S) {
  const int n = p.n();
  std::vector<char> removed(n + 1, 0);
  for (int s : S) {
    if (s <= 0 || s > n || removed[s]) throw std::invalid_argument("restrict_relabel: invalid index set");
    removed[s] = 1;
  }
  std::vector<int> label(n + 1, -1);
  int next = 0;
  for (int i = 0; i <= n; ++i)
    if (!removed[i]) label[i] = next++;
  std::vector<int> img(next);
  for (int i = 0; i <= n; ++i) {
    if (removed[i]) continue;
    int y = p(i);
    while (removed[y]) y = p(y);
    img[label[i]] = label[y];
  }
  return Permutation0(std::move(img));
}

Partition12::Partition12(std::vector<int> partner) : partner_(std::move(partner)) {
  if (partner_.empty() || partner_[0] != 0) throw std::invalid_argument("Partition12: partner[0] must be 0");
  const int n = static_cast<int>(partner_.size()) - 1;
  for (int i = 1; i <= n; ++i) {
    int j = partner_[i];
    if (j < 1 || j > n || partner_[j] != i) throw std::invalid_argument("Partition12: blocks are not an involution");
  }
}

Partition12 Partition12::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> partner(n + 1);
  for (int i = 0; i <= n; ++i) partner[i] = i;
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > n || b > n || a == b || partner[a] != a || partner[b] != b) {
      throw std::invalid_argument("Partition12: invalid pair");
    }
    partner[a] = b;
    partner[b] = a;
  }
  return Partition12(std::move(partner));
}

Partition12 Partition12::parse(std::string_view text, int n) {
  if (text == "id") return from_pairs(n, {});
  auto p = Permutation0::parse(text, n);
  std::vector<int> partner(p.image());
  return Partition12(std::move(partner));
}

int Partition12::pairs() const {
  int l = 0;
  for (int i = 1; i <= n(); ++i)
    if (partner_[i] > i) ++l;
  return l;
}

std::vector<int> Partition12::support() const {
  std::vector<int> s;
  for (int i = 1; i <= n(); ++i)
    if (partner_[i] != i) s.push_back(i);
  return s;
}

std::vector<std::pair<int, int>> Partition12::pair_list() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n(); ++i)
    if (partner_[i] > i) out.emplace_back(i, partner_[i]);
  return out;
}

Permutation0 Partition12::as_permutation() const {
  return Permutation0(partner_);
}

std::string Partition12::to_string() const {
  if (pairs() == 0) return "id";
  auto c = as_permutation().cycles();
  std::string s;
  const bool wide = n() >= 10;
  for (std::size_t k = 1; k < c.size(); ++k) {
    s += '(';
    for (std::size_t i = 0; i < c[k].size(); ++i) {
      if (wide && i > 0) s += ' ';
      s += std::to_string(c[k][i]);
    }
    s += ')';
  }
  return s;
}

Contraction contract(const Permutation0& alpha, const Partition12& pi) {
  if (alpha.n() != pi.n()) throw std::invalid_argument("contract: size mismatch");
  Contraction c;
  c.pi_alpha = compose(pi.as_permutation(), alpha);
  c.l = pi.pairs();
  c.beta = restrict_relabel(c.pi_alpha, pi.support());
  c.n_exponent = cyc0(c.beta) - cyc0(c.pi_alpha) + c.l;
  return c;
}

std::vector<Partition12> enumerate_partition12(int n) {
  if (n < 0 || n > 14) throw std::invalid_argument("enumerate_partition12: n must be in [0, 14], got " + std::to_string(n));
  std::vector<Partition12> out;
  std::vector<int> partner(n + 1, -1);
  partner[0] = 0;
  std::function<void(int)> rec = [&](int i) {
    while (i <= n && partner[i] != -1) ++i;
    if (i > n) {
      out.emplace_back(partner);
      return;
    }
    partner[i] = i;
    rec(i + 1);
    for (int j = i + 1; j <= n; ++j) {
      if (partner[j] != -1) continue;
      partner[i] = j;
      partner[j] = i;
      rec(i + 1);
      partner[j] = -1;
    }
    partner[i] = -1;
  };
  rec(1);
  return out;
}

std::uint64_t involution_count(int n) {
  std::uint64_t a = 1, b = 1;  // I(0), I(1)
  if (n <= 1) return 1;
  for (int m = 2; m <= n; ++m) {
    std::uint64_t c = b + static_cast<std::uint64_t>(m - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

std::uint64_t catalan(int p) {
  if (p < 0 || p > 30) throw std::invalid_argument("catalan: p must be in [0, 30]");
  std::uint64_t c = 1;
  for (int i = 0; i < p; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace tracelimits
