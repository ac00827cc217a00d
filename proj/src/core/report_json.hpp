// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0
//
// Report serialization. Real-valued quantities are rendered as decimal
// strings (never JSON floats) so emitted reports are reproducible byte for
// byte across runs; integer counts and indices stay plain JSON numbers.

#ifndef DELTAWV_CORE_REPORT_JSON_HPP
#define DELTAWV_CORE_REPORT_JSON_HPP

#include "core/difference_eq.hpp"
#include "core/verifier.hpp"
#include "core/wiman_valiron.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace deltawv {

using OrderedJson = nlohmann::ordered_json;

// Positional decimal when the exponent is moderate ("-0.9", "1963.4"),
// scientific otherwise ("4.356e44"). Trailing zeros are trimmed.
std::string format_real(const Real& v, size_t digits = 30);

// Shortest round-trip decimal for doubles.
std::string format_double(double v);

OrderedJson complex_json(const Complex& v, size_t digits = 30);

OrderedJson to_json(const DecayReport& rep);
OrderedJson to_json(const WVDifferenceReport& rep);
OrderedJson to_json(const GammaReport& rep);
OrderedJson to_json(const WVProfile& rep);
OrderedJson pointwise_json(const std::string& f_name, unsigned k, double eps,
                           const std::vector<PointwiseRow>& rows);
OrderedJson to_json(const NewtonPolygon& poly);
OrderedJson to_json(const GrowthFit& fit);
OrderedJson to_json(const NewtonSolution& sol, size_t coeff_limit = 64);
OrderedJson to_json(const GrowthVerdict& verdict);

} // namespace deltawv

#endif
