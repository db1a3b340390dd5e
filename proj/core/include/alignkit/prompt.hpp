#pragma once

#include <string>
#include <string_view>

#include "alignkit/scene.hpp"

namespace alignkit {

/// "one" .. "ten"; throws std::out_of_range outside 1..10.
std::string_view number_word(int n);
/// "first" .. "tenth"; throws std::out_of_range outside 1..10.
std::string_view ordinal_word(int n);
/// "on the left of", "on the right of", "above", "below".
std::string_view relation_phrase(RelationKind k);

/// "the first boat"
std::string instance_phrase(const InstanceRef& ref);

/// Renders the benchmark prompt:
///
///   A photo-realistic image of three bench, one boat. The first bench is
///   white, on the left of the first boat. The second bench is black. ...
///
/// Counts use number words and categories are never pluralized. Each
/// instance's relation clauses (where it is the subject) follow its color
/// clause. Throws std::invalid_argument for an invalid scene.
std::string fill_template(const StructuredScene& scene, const CompatibilityTable& table,
                          const SceneLimits& limits = {});

/// Rendering without validation, for hand-built scenes outside the vocabulary.
std::string render_prompt(const StructuredScene& scene);

}  // namespace alignkit
