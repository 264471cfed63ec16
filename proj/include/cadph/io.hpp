#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadph/complex.hpp"
#include "cadph/poset.hpp"

namespace cadph {

inline constexpr int kFormatVersion = 1;

/// Parses an input document (see docs/format.md). Throws ParseError.
ComplexSpec parse_document(const nlohmann::json& doc);
ComplexSpec load_document(const std::filesystem::path& path);
nlohmann::json document_to_json(const ComplexSpec& spec);

/// Element reference as written in documents: an integer (one-axis grade), an
/// integer array (grade vector) or a string label.
std::size_t parse_element_ref(const FinitePoset& p, const nlohmann::json& ref);
nlohmann::json element_to_json(const FinitePoset& p, std::size_t x);

/// Opens written as generator lists: "{(1,1),(0,2)}", "(1,1);(0,2)", "a", "{}" or
/// "inf" for the empty open.
UpSet parse_open(const FinitePoset& p, const std::string& text);

/// One point of a generalized persistence diagram. Births and deaths are the
/// minimal elements of the opens; an empty death means the class never dies.
struct DiagramEntry {
    std::size_t degree = 0;
    std::vector<std::size_t> birth;
    std::vector<std::size_t> death;
    std::size_t multiplicity = 0;

    friend bool operator==(const DiagramEntry&, const DiagramEntry&) = default;
};

DiagramEntry make_entry(const FinitePoset& p, std::size_t degree, const PairOpen& pair, std::size_t multiplicity);
/// Orders entries by degree, birth grades, then death grades (infinite last).
void sort_entries(const FinitePoset& p, std::vector<DiagramEntry>& entries);

nlohmann::json diagram_to_json(const FinitePoset& p, const std::vector<DiagramEntry>& entries);
std::vector<DiagramEntry> diagram_from_json(const FinitePoset& p, const nlohmann::json& doc);
std::string diagram_to_csv(const FinitePoset& p, const std::vector<DiagramEntry>& entries);
std::vector<DiagramEntry> diagram_from_csv(const FinitePoset& p, const std::string& text);

/// A bar on a chain poset; positions index the chain order.
struct Bar {
    std::size_t degree = 0;
    std::size_t birth = 0;
    std::optional<std::size_t> death;
    std::size_t multiplicity = 0;

    friend bool operator==(const Bar&, const Bar&) = default;
    friend auto operator<=>(const Bar&, const Bar&) = default;
};

/// Throws Unsupported unless p is a chain.
std::vector<Bar> bars_from_diagram(const FinitePoset& p, const std::vector<DiagramEntry>& entries);
/// Merges equal intervals and drops empty multiplicities.
std::vector<Bar> normalize_bars(std::vector<Bar> bars);

std::string render_bar(const FinitePoset& p, const Bar& bar);
nlohmann::json bars_to_json(const FinitePoset& p, const std::vector<Bar>& bars);
std::string bars_to_csv(const FinitePoset& p, const std::vector<Bar>& bars);
std::string bars_to_svg(const FinitePoset& p, const std::vector<Bar>& bars);

}  // namespace cadph
