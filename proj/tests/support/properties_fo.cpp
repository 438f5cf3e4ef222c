#include <random>
#include <vector>

#include "ntcc/fo/factor_oracle.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace props {

using ntcc::fo::FactorOracle;

Result fo_completeness(int max_len) {
  std::size_t words = 0;
  std::size_t checked = 0;
  std::vector<int> s;
  // Every word over {0,1,2} of length 0..max_len, in length-then-lexicographic order.
  for (int len = 0; len <= max_len; ++len) {
    s.assign(static_cast<std::size_t>(len), 0);
    while (true) {
      const FactorOracle fo(s);
      ++words;
      for (const auto& f : oracle::factors(s)) {
        ++checked;
        if (!fo.is_factor(f)) {
          std::string w;
          for (int c : s) w += static_cast<char>('a' + c);
          return {false, "factor rejected in word " + w};
        }
      }
      int i = len - 1;
      while (i >= 0 && s[static_cast<std::size_t>(i)] == 2) s[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++s[static_cast<std::size_t>(i)];
    }
  }
  return {true, std::to_string(words) + " words, " + std::to_string(checked) + " factors accepted"};
}

Result fo_link_budget(int words, int max_len, unsigned seed) {
  std::mt19937 rng(seed);
  for (int w = 0; w < words; ++w) {
    const int m = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_len - 1));
    const int alpha = 1 + static_cast<int>(rng() % 6);
    std::vector<int> s(static_cast<std::size_t>(m));
    for (auto& c : s) c = static_cast<int>(rng() % static_cast<unsigned>(alpha));
    const FactorOracle fo(s);
    if (fo.num_factor_links() > static_cast<std::size_t>(2 * m - 1))
      return {false, "m=" + std::to_string(m) + " links=" + std::to_string(fo.num_factor_links())};
  }
  return {true, std::to_string(words) + " random words within 2m-1 links"};
}

}  // namespace props
