#include "esq/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "esq/error.hpp"
#include "esq/random.hpp"

namespace esq {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cumulative_(n) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cumulative_[r] = total;
    }
  }

  std::size_t operator()(Rng& rng) const {
    const double target = uniform_unit(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

double standard_normal(Rng& rng) {
  // Box-Muller; one variate per call keeps the stream simple.
  double u1 = uniform_unit(rng);
  while (u1 <= 0.0) u1 = uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace

std::string pseudo_word(std::size_t ordinal) {
  const std::size_t base = kConsonants.size() * kVowels.size();
  std::vector<std::size_t> digits;
  std::size_t v = ordinal;
  do {
    digits.push_back(v % base);
    v /= base;
  } while (v != 0);
  while (digits.size() < 2) digits.push_back(0);
  std::string word;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    word.push_back(kConsonants[*it / kVowels.size()]);
    word.push_back(kVowels[*it % kVowels.size()]);
  }
  return word;
}

std::vector<RawDocument> block_corpus(const BlockCorpusConfig& config) {
  if (config.classes == 0 || config.vocab_per_class == 0 || config.min_length == 0 ||
      config.max_length < config.min_length)
    throw Error("invalid block corpus configuration");
  Rng rng = make_rng({config.seed, 0xb10c});
  std::vector<RawDocument> docs;
  for (std::size_t c = 0; c < config.classes; ++c) {
    const std::string label = "class" + std::to_string(c);
    for (std::size_t i = 0; i < config.docs_per_class; ++i) {
      const auto length = config.min_length + uniform_index(rng, config.max_length - config.min_length + 1);
      std::vector<std::string> tokens;
      for (std::size_t t = 0; t < length; ++t)
        tokens.push_back(pseudo_word(c * config.vocab_per_class + uniform_index(rng, config.vocab_per_class)));
      docs.push_back({label + "-" + std::to_string(i), join(tokens), label});
    }
  }
  return docs;
}

std::vector<std::string> english_function_words() {
  return {"the", "of", "and", "to", "in", "is", "that", "it",  "was",  "for",  "on",    "are", "as",   "with", "be",  "at",
          "by",  "this", "have", "from", "or", "an", "but", "not", "which", "you", "were", "he", "has", "its", "we", "will"};
}

std::vector<RawDocument> topic_corpus(const TopicCorpusConfig& config) {
  const auto classes = config.class_names.size();
  if (classes == 0 || config.background_vocab == 0 || config.topic_vocab == 0 ||
      config.function_words.size() > config.background_vocab)
    throw Error("invalid topic corpus configuration");
  if (config.shared_topic_weight > 0.0 && config.shared_topic_vocab == 0)
    throw Error("shared topic weight needs a shared topic vocabulary");

  // Word ordinals: [background][class 0 topic]...[class s-1 topic][shared].
  const std::size_t topic_base = config.background_vocab;
  const std::size_t shared_base = topic_base + classes * config.topic_vocab;

  const ZipfSampler background(config.background_vocab, config.zipf_exponent);
  const ZipfSampler topic(config.topic_vocab, config.zipf_exponent);
  const ZipfSampler shared(std::max<std::size_t>(config.shared_topic_vocab, 1), config.zipf_exponent);

  Rng rng = make_rng({config.seed, 0x70b1c});
  std::vector<RawDocument> docs;
  docs.reserve(classes * config.docs_per_class);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < config.docs_per_class; ++i) {
      const double z = standard_normal(rng);
      const double raw_length = std::exp(std::log(config.median_length) + config.length_sigma * z);
      const auto length = std::clamp(static_cast<std::size_t>(std::llround(raw_length)), config.min_length,
                                     config.max_length);
      const bool off_topic = bernoulli(rng, config.off_topic_rate);
      const double share =
          off_topic ? 0.0
                    : config.topic_share_min + (config.topic_share_max - config.topic_share_min) * uniform_unit(rng);

      std::vector<std::string> tokens;
      tokens.reserve(length);
      std::vector<std::size_t> topic_drawn;
      std::vector<std::size_t> background_drawn;
      auto draw = [&](std::vector<std::size_t>& drawn, double burst, auto&& fresh) {
        if (!drawn.empty() && bernoulli(rng, burst)) return drawn[uniform_index(rng, drawn.size())];
        const std::size_t ordinal = fresh();
        drawn.push_back(ordinal);
        return ordinal;
      };
      for (std::size_t t = 0; t < length; ++t) {
        std::size_t ordinal;
        if (bernoulli(rng, share)) {
          ordinal = draw(topic_drawn, config.topic_burst_rate, [&]() -> std::size_t {
            if (config.shared_topic_vocab > 0 && bernoulli(rng, config.shared_topic_weight))
              return shared_base + shared(rng);
            std::size_t cls = c;
            if (classes > 1 && bernoulli(rng, config.cross_topic_rate)) {
              cls = uniform_index(rng, classes - 1);
              if (cls >= c) ++cls;
            }
            return topic_base + cls * config.topic_vocab + topic(rng);
          });
        } else {
          ordinal = draw(background_drawn, config.background_burst_rate, [&] { return background(rng); });
        }
        tokens.push_back(ordinal < config.function_words.size() ? config.function_words[ordinal]
                                                                : pseudo_word(ordinal));
      }
      const auto& label = config.class_names[c];
      docs.push_back({label + "-" + std::to_string(i), join(tokens), label});
    }
  }
  return docs;
}

std::vector<std::string> synthetic_preset_names() { return {"blocks3", "ng3-like", "ng5-like", "ng6-like", "r4-like"}; }

std::vector<RawDocument> synthetic_preset(std::string_view name, std::uint64_t seed) {
  if (name == "blocks3") {
    BlockCorpusConfig cfg;
    cfg.seed = seed;
    return block_corpus(cfg);
  }
  // Shared by every topic preset: tokens repeat within a document and rare
  // topical words come in bursts. Only the topical share differs; it is set
  // so the k-means++ baseline lands near its reported score on the real
  // collection each preset imitates.
  TopicCorpusConfig cfg;
  cfg.seed = seed;
  cfg.topic_burst_rate = 0.3;
  cfg.background_burst_rate = 0.1;
  double share_min = 0.0;
  if (name == "ng3-like") {
    cfg.class_names = {"rec.sport.hockey", "sci.space", "soc.religion.christian"};
    share_min = 0.2;
  } else if (name == "ng5-like") {
    cfg.class_names = {"comp.os.ms-windows.misc", "misc.forsale", "rec.sport.hockey", "sci.space",
                       "soc.religion.christian"};
    share_min = 0.07;
  } else if (name == "ng6-like") {
    cfg.class_names = {"comp.graphics", "rec.sport.hockey", "sci.crypt", "sci.space", "soc.religion.christian",
                       "talk.politics.guns"};
    share_min = 0.04;
  } else if (name == "r4-like") {
    cfg.class_names = {"crude", "earn", "grain", "money-fx"};
    cfg.docs_per_class = 200;
    cfg.median_length = 90.0;
    cfg.shared_topic_vocab = 150;
    cfg.shared_topic_weight = 0.35;
    share_min = 0.08;
  } else {
    throw Error("unknown synthetic preset '" + std::string(name) + "'");
  }
  cfg.topic_share_min = share_min;
  cfg.topic_share_max = share_min + 0.3;
  return topic_corpus(cfg);
}

}  // namespace esq
