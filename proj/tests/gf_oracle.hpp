#pragma once

#include "entwine/entwine.hpp"

#include <cstdint>
#include <optional>

namespace oracle {

// Exhaustive enumeration over GF(p): the conditions are restated entrywise on raw residue
// tables and every vector of unknowns is tested. Returns nullopt when p^unknowns exceeds max_points.
struct Count {
    std::size_t unknowns = 0;
    std::uint64_t solutions = 0;
    std::size_t dim = 0;
};

std::size_t v1_unknowns(const ent::Entwining& e);
std::size_t w1_unknowns(const ent::Entwining& e);
std::size_t nat_unknowns(const ent::Entwining& e);

std::optional<Count> v1_dim(const ent::Entwining& e, std::uint64_t max_points = 1ULL << 20);
std::optional<Count> w1_dim(const ent::Entwining& e, std::uint64_t max_points = 1ULL << 20);
std::optional<Count> nat_dim(const ent::Entwining& e, std::uint64_t max_points = 1ULL << 20);

}  // namespace oracle
