#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace dpua::model {

// Word-level tokenizer with an unknown-token fallback. Rules, applied to
// lowercased text: newlines are standalone tokens, decimal literals
// ("0.60") stay whole, words are runs of [a-z0-9_'], anything else is a
// single-character token. Detokenization re-attaches punctuation so that
// round-tripped field lines stay parseable ("prediction :" never occurs).
class Tokenizer {
public:
    static constexpr int kUnk = 0;
    static constexpr int kEos = 1;

    Tokenizer() = default;
    explicit Tokenizer(std::vector<std::string> vocab); // as stored in a checkpoint

    // Frequency-ranked vocabulary over the corpus texts, capped.
    static Tokenizer build(const std::vector<std::string>& texts, std::size_t max_vocab = 5000);

    static std::vector<std::string> split(const std::string& text);

    std::vector<int> encode(const std::string& text) const;
    std::string decode(const std::vector<int>& ids) const; // skips <eos>/<unk> markers

    int id_of(const std::string& token) const; // kUnk when absent
    const std::string& token_of(int id) const;
    std::size_t vocab_size() const { return vocab_.size(); }
    const std::vector<std::string>& vocab() const { return vocab_; }

private:
    std::vector<std::string> vocab_;
    std::unordered_map<std::string, int> index_;
};

} // namespace dpua::model
