#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "polymax/distribution.hpp"
#include "polymax/equilibrium.hpp"
#include "polymax/game.hpp"

namespace polymax {

// JSON codecs. Encoding is deterministic (sorted object keys, shortest
// round-trip number form), so encoding the same value twice gives identical
// bytes and decode(encode(v)) reproduces v exactly. Decoders throw ParseError
// naming the path to the offending field and reject values that break the
// type's invariants.

std::string encode_game(const PolymatrixGame& game);
PolymatrixGame decode_game(std::string_view bytes);

std::string encode_product(const ProductDistribution& x);
ProductDistribution decode_product(std::string_view bytes);

std::string encode_explicit(const ExplicitDistribution& d);
ExplicitDistribution decode_explicit(std::string_view bytes);

std::string encode_mixture(const MixtureDistribution& mix);
MixtureDistribution decode_mixture(std::string_view bytes);

std::string encode_regret_report(const RegretReport& report);
RegretReport decode_regret_report(std::string_view bytes);

// Boolean expression as standalone JSON ({"var": k} and
// {"op": "and"|"or"|"not", "args": [...]}).
std::string encode_formula(const BoolExpr& expr);
BoolExpr decode_formula(std::string_view bytes);

// Which distribution codec a document is for, judged by its top-level key
// ("marginals", "atoms" or "components").
enum class DistributionKind { Product, Explicit, Mixture };
DistributionKind detect_distribution(std::string_view bytes);

// Whole-file helpers; InputError on I/O failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace polymax
