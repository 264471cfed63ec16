#include "cadph/diff.hpp"

#include <sstream>

namespace cadph {

GroupSquare GroupSquare::make(GroupObj src, GroupObj dst, long long top, long long bottom) {
    GroupSquare s{src, dst, top, bottom};
    if (!s.commutes()) throw Error("square " + to_string(s) + " does not commute");
    return s;
}

std::ostream& operator<<(std::ostream& os, const GroupObj& a) { return os << a.value; }

std::ostream& operator<<(std::ostream& os, const GroupSquare& s) {
    return os << "(src=" << s.src.value << ", dst=" << s.dst.value << ", top=" << s.top << ", bottom=" << s.bottom
              << ")";
}

std::string to_string(const GroupSquare& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

GroupSquare arr_add(const GroupSquare& s, const GroupSquare& t) {
    return {s.src + t.src, s.dst + t.dst, s.top + t.top, s.bottom + t.bottom};
}

GroupSquare arr_sub(const GroupSquare& s, const GroupSquare& t) {
    return {s.src - t.src, s.dst - t.dst, s.top - t.top, s.bottom - t.bottom};
}

GroupSquare arr_inv(const GroupSquare& s) { return {-s.src, -s.dst, -s.top, -s.bottom}; }

GroupSquare arr_zero() { return {}; }

GroupSquare arr_compose(const GroupSquare& s, const GroupSquare& t) {
    if (!(s.dst == t.src)) throw Error("squares are not composable");
    return {s.src, t.dst, s.top + t.top, s.bottom + t.bottom};
}

void CadReport::merge(const CadReport& other) {
    checked += other.checked;
    counterexamples.insert(counterexamples.end(), other.counterexamples.begin(), other.counterexamples.end());
}

ChangeAction<GradedPair, std::size_t> blanket_shift_action() {
    return {[](const GradedPair& x, const std::size_t& m) { return GradedPair{x.pair, x.degree + m}; },
            [](const std::size_t& a, const std::size_t& b) { return a + b; }, 0};
}

bool graded_leq(const GradedPair& a, const GradedPair& b) {
    return a.pair.birth.is_superset_of(b.pair.birth) && a.pair.death.is_superset_of(b.pair.death) &&
           a.degree >= b.degree;
}

}  // namespace cadph
