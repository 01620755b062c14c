#pragma once

#include <string>

#include "json.hpp"
#include "nevlab/polycore/polynomial.hpp"

namespace nevlab::poly {

// Text format: "num_vars; degree; [e0,e1,...]:re+im*i; ..."
std::string to_text(const FloatForm& p);
std::string to_text(const ExactForm& p);
FloatForm parse_float_form(const std::string& text);
ExactForm parse_exact_form(const std::string& text);

// JSON: {"vars":3,"degree":2,"terms":[{"exp":[2,1,0],"re":1,"im":0}]}; exact
// coefficients are written as "p/q" strings. "degree" is optional on input unless
// the form is zero.
nlohmann::json to_json(const FloatForm& p);
nlohmann::json to_json(const ExactForm& p);
FloatForm float_form_from_json(const nlohmann::json& j);
ExactForm exact_form_from_json(const nlohmann::json& j);

} // namespace nevlab::poly
