#pragma once

#include <cstdint>
#include <vector>

#include "matsym/model.hpp"

namespace matsym::problems {

struct BibdParams {
    int v = 0;
    int b = 0;
    int r = 0;
    int k = 0;
    int lambda = 0;
};

// v x b 0/1 incidence matrix: row sums r, column sums k, scalar product lambda
// between distinct rows; full row and column symmetry. Throws InvalidParams unless
// v*r == b*k and lambda*(v-1) == r*(k-1).
MatrixModel build_bibd(const BibdParams& p);

struct RackModel {
    int capacity = 0;  // card slots
    int power = 0;     // power units the rack supplies
    int count = 0;     // racks of this model
};

struct CardType {
    int power = 0;     // demand per card
    int quantity = 0;  // cards to place
};

struct RackParams {
    std::vector<RackModel> rack_models;
    std::vector<CardType> card_types;
};

/// Counting formulation: cell (i, j) is the number of cards of type j in rack i.
/// Racks are laid out model by model; racks sharing a model form one row block and
/// card types with equal power and quantity form one column block.
struct RackInstance {
    MatrixModel model;
    std::vector<int> rack_model_of_row;
};

RackInstance build_rack(const RackParams& p);

/// Fully symmetric rows x cols model over {0..domain_size-1}. Each constraint family
/// (upper and lower sum bounds on rows, on columns and on the total, equal row sums,
/// equal column sums, pairwise row scalar products for 0/1 domains) is included with
/// probability `density`. Thresholds are drawn once per family and shared by every row
/// or column, which keeps the declared symmetry a true symmetry. Identical seeds give
/// identical models.
MatrixModel random_model(std::vector<int> dims, int domain_size, double density, std::uint64_t seed);

}  // namespace matsym::problems
