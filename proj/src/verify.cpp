#include "cadph/verify.hpp"

#include <sstream>

namespace cadph {

namespace detail {

std::string describe_graded(const FinitePoset& p, const GradedPair& x) {
    return describe_pair(p, x.pair) + "@" + std::to_string(x.degree);
}

}  // namespace detail

bool VerifyReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

const CadReport* VerifyReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string VerifyReport::to_text() const {
    constexpr std::size_t shown = 5;
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.ok() ? "PASS " : "FAIL ") << c.name << " checked=" << c.checked
           << " counterexamples=" << c.counterexamples.size() << '\n';
        for (std::size_t i = 0; i < c.counterexamples.size() && i < shown; ++i) {
            os << "  " << c.counterexamples[i] << '\n';
        }
        if (c.counterexamples.size() > shown) os << "  ... " << c.counterexamples.size() - shown << " more\n";
    }
    for (const auto& n : notes) os << "note: " << n << '\n';
    os << (ok() ? "verify: ok" : "verify: counterexamples found") << '\n';
    return os.str();
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
        cs.push_back({{"name", c.name}, {"ok", c.ok()}, {"checked", c.checked}, {"counterexamples", c.counterexamples}});
    }
    return {{"format_version", kFormatVersion}, {"ok", ok()}, {"checks", cs}, {"notes", notes}};
}

}  // namespace cadph
