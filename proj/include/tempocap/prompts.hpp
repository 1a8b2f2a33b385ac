#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tempocap/interval.hpp"
#include "tempocap/sampler.hpp"

namespace tempocap {

/// Fully rendered instruction text; built by concatenation of fixed blocks
/// and interpolated values, so it never contains unresolved placeholders.
struct PromptText {
  std::string text;

  bool operator==(const PromptText& other) const = default;
};

/// Renders the five-block paraphrase instruction (Context / Paraphrase /
/// Global Caption / Musical Change / Music Structure) with the templated
/// caption serialized into the Context block. Pure: byte-identical output
/// for identical input.
PromptText render_paraphrase_prompt(const TemplatedCaption& templated);

/// Renders the pseudo-label instruction carrying genre, BPM and the labeled
/// segment boundaries. Throws on an empty genre, a non-positive BPM, or
/// overlapping segments.
PromptText render_pseudolabel_prompt(
    const std::string& genre, double bpm,
    const std::vector<std::pair<TimeInterval, std::string>>& segments);

}  // namespace tempocap
