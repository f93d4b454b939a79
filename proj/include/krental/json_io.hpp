#ifndef KRENTAL_JSON_IO_HPP
#define KRENTAL_JSON_IO_HPP

#include <string>

#include "krental/model.hpp"
#include "krental/pricing.hpp"
#include "krental/rounding.hpp"

namespace krental {

// Instance wire format:
//   {"k": int,
//    "kind": {"fixed": {"d","v_min","v_max"}} | {"variable": {"d_min","d_max"}},
//    "requests": [{"a","d","v"}, ...]}
// Unknown fields anywhere are rejected.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

// OcrInput wire format: {"k": int, "d": f, "players": [{"a","x"[,"d"]}]}.
OcrInput ocr_input_from_json(const std::string& text);
std::string ocr_input_to_json(const OcrInput& input);

// Solved prices: {"epsilon": f, "alpha": f, "pi": [f, ...]}.
PricingFunction prices_from_json(const std::string& text, double* alpha_out);
std::string prices_to_json(const PricingFunction& prices, double alpha);

std::string trace_to_json(const RunTrace& trace, const Instance& inst);

}  // namespace krental

#endif
