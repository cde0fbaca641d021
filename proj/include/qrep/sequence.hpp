#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qrep {

enum class SeqFamily { reciprocal, one_minus_pow, exp_neg_pow, hrr, constant, list };

// A named scalar sequence x_n, evaluated in the log domain where the values
// leave double range.
//   reciprocal          1/n                 (n >= 1)
//   one-minus-pow:b     1 - b^-n
//   exp-neg-pow:l:even  e^{-l^n} for even n >= 1, else 1 (odd likewise)
//   hrr                 exp((-1)^n n!) for n >= 1, else 1
//   const:c             c
//   list:[v1,...]       v_n for 1 <= n <= k; an optional tail literal after
//                       a further ':' gives x_n for n > k
struct SequenceSpec {
  SeqFamily family = SeqFamily::constant;
  double param = 0;
  bool odd = false;  // parity mask for exp-neg-pow
  std::vector<double> values;
  std::shared_ptr<const SequenceSpec> tail;
};

// Accepts the literal with or without the leading "seq:".
SequenceSpec parse_sequence(std::string_view literal);
std::string to_string(const SequenceSpec& s);

// log|x_n|, -inf for a zero entry. Throws PreconditionError outside the
// domain of the family.
double log_abs(const SequenceSpec& s, long n);
// Sign of x_n (+1, -1 or 0).
int sign(const SequenceSpec& s, long n);
// x_n as a double; may underflow to 0 or overflow.
double value(const SequenceSpec& s, long n);

}  // namespace qrep
