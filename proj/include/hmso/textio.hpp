#pragma once

#include <string>

#include <json.hpp>

#include "hmso/modgroup.hpp"
#include "hmso/ortho4.hpp"

namespace hmso {

/// "p/q" or "p"; whitespace tolerated. Throws ParseError.
Rat parse_rat(const std::string& text);

/// Canonical field-element form "x+y*sqrt(m)" with omitted terms and
/// whitespace allowed ("3", "sqrt(5)", "-1/2*sqrt(5)"). The radicand
/// must match the field.
QuadElem parse_quad(const std::string& text, const FieldCtx& ctx);

/// Field element that may also use the symbol "w" for omega (basis
/// specs on the command line, e.g. "1,w" or "11,1+w").
QuadElem parse_quad_or_omega(const std::string& text, const FieldCtx& ctx);

/// Matrix form "[[a,b],[c,d]]" with an optional "/sqrt(l)" suffix.
SigmaElem parse_sigma(const std::string& text, const FieldCtx& ctx);

/// Canonical matrix text; the "/sqrt(l)" suffix is omitted when l = 1.
std::string sigma_str(const SigmaElem& m);

/// HNF basis text "[a, b+c*w]".
std::string ideal_str(const IdealHNF& i);

nlohmann::json rat_json(const Rat& r);
nlohmann::json mat4_json(const Mat4& u);
Mat4 mat4_from_json(const nlohmann::json& j);

}  // namespace hmso
