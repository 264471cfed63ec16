#include "cadph/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cadph {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long as_long(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
    return v.get<long>();
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

FinitePoset parse_poset(const json& j) {
    if (!j.is_object()) throw ParseError("poset must be an object");
    const auto kind = j.value("kind", std::string("grid"));
    if (kind == "grid") {
        if (j.contains("shape")) {
            const auto& shape = j.at("shape");
            if (shape.is_number_integer()) return FinitePoset::grid({as_long(shape, "shape")});
            if (!shape.is_array()) throw ParseError("grid shape must be an integer array");
            std::vector<long> s;
            for (const auto& v : shape) s.push_back(as_long(v, "grid shape entry"));
            return FinitePoset::grid(s);
        }
        if (j.contains("grades")) {
            std::vector<Grade> grades;
            for (const auto& g : j.at("grades")) {
                if (g.is_number_integer()) {
                    grades.push_back({g.get<long>()});
                    continue;
                }
                if (!g.is_array()) throw ParseError("grade must be an integer or integer array");
                Grade v;
                for (const auto& c : g) v.push_back(as_long(c, "grade coordinate"));
                grades.push_back(std::move(v));
            }
            return FinitePoset::from_grades(std::move(grades));
        }
        throw ParseError("grid poset needs \"shape\" or \"grades\"");
    }
    if (kind == "chain") return FinitePoset::chain(static_cast<std::size_t>(as_long(require(j, "length", "chain poset"), "length")));
    if (kind == "explicit") {
        std::vector<std::string> labels;
        std::map<std::string, std::size_t> index;
        for (const auto& e : require(j, "elements", "explicit poset")) {
            if (!e.is_string()) throw ParseError("explicit poset elements must be strings");
            index.emplace(e.get<std::string>(), labels.size());
            labels.push_back(e.get<std::string>());
        }
        std::vector<std::pair<std::size_t, std::size_t>> covers;
        if (j.contains("covers")) {
            for (const auto& c : j.at("covers")) {
                if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
                    throw ParseError("covers must be [lower, upper] label pairs");
                }
                auto lo = index.find(c[0].get<std::string>());
                auto hi = index.find(c[1].get<std::string>());
                if (lo == index.end() || hi == index.end()) throw ParseError("cover names an unknown element");
                covers.emplace_back(lo->second, hi->second);
            }
        }
        return FinitePoset::from_covers(std::move(labels), covers);
    }
    throw ParseError("unknown poset kind \"" + kind + "\"");
}

json poset_to_json(const FinitePoset& p) {
    if (p.has_grades()) {
        json grades = json::array();
        for (std::size_t i = 0; i < p.size(); ++i) grades.push_back(element_to_json(p, i));
        return {{"kind", "grid"}, {"grades", grades}};
    }
    json elements = json::array();
    json covers = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) elements.push_back(p.label(i));
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < p.size(); ++b) {
            if (!p.less(a, b)) continue;
            bool direct = true;
            for (std::size_t c = 0; c < p.size() && direct; ++c) direct = !(p.less(a, c) && p.less(c, b));
            if (direct) covers.push_back({p.label(a), p.label(b)});
        }
    }
    return {{"kind", "explicit"}, {"elements", elements}, {"covers", covers}};
}

mpq_class parse_coefficient(const json& v) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ParseError("boundary coefficient must be an integer or a rational string");
}

json coefficient_to_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

CellSpec parse_cell(const FinitePoset& p, const json& c) {
    if (!c.is_object()) throw ParseError("cell must be an object");
    CellSpec cell;
    const auto& id = require(c, "id", "cell");
    if (!id.is_string()) throw ParseError("cell id must be a string");
    cell.id = id.get<std::string>();
    const std::string where = "cell '" + cell.id + "'";
    if (c.contains("boundary")) {
        cell.simplex = false;
        cell.dim = static_cast<std::size_t>(as_long(require(c, "dim", where), where + " dim"));
        for (const auto& f : c.at("boundary")) {
            if (!f.is_array() || f.size() != 2 || !f[0].is_string()) {
                throw ParseError(where + ": boundary entries must be [face id, coefficient]");
            }
            cell.faces.emplace_back(f[0].get<std::string>(), parse_coefficient(f[1]));
        }
    } else {
        if (c.contains("vertices")) {
            for (const auto& v : c.at("vertices")) {
                if (!v.is_string()) throw ParseError(where + ": vertices must be ids");
                cell.vertices.push_back(v.get<std::string>());
            }
        }
        if (c.contains("dim")) {
            const long d = as_long(c.at("dim"), where + " dim");
            if (d < 0) throw ParseError(where + ": negative dimension");
            cell.dim = static_cast<std::size_t>(d);
        } else {
            cell.dim = cell.vertices.empty() ? 0 : cell.vertices.size() - 1;
        }
    }
    if (c.contains("birth")) {
        cell.births.push_back(parse_element_ref(p, c.at("birth")));
    }
    if (c.contains("births")) {
        const auto& bs = c.at("births");
        if (!bs.is_array()) throw ParseError(where + ": births must be a list");
        for (const auto& b : bs) cell.births.push_back(parse_element_ref(p, b));
    }
    std::sort(cell.births.begin(), cell.births.end());
    cell.births.erase(std::unique(cell.births.begin(), cell.births.end()), cell.births.end());
    return cell;
}

std::vector<std::string> split_generators(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth == 0 && (ch == ',' || ch == ';')) {
            out.push_back(trim(cur));
            cur.clear();
            continue;
        }
        cur += ch;
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

// Sort key for elements: grade vectors when present, else labels.
struct ElementKey {
    const FinitePoset* p;
    bool operator()(std::size_t a, std::size_t b) const {
        if (p->has_grades()) return *p->element(a).grade < *p->element(b).grade;
        return p->label(a) < p->label(b);
    }
};

bool list_less(const FinitePoset& p, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    ElementKey key{&p};
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), key);
}

json elements_to_json(const FinitePoset& p, const std::vector<std::size_t>& xs) {
    json out = json::array();
    for (auto x : xs) out.push_back(element_to_json(p, x));
    return out;
}

std::vector<std::size_t> elements_from_json(const FinitePoset& p, const json& j, bool allow_inf) {
    if (allow_inf && j.is_string() && j.get<std::string>() == "inf") return {};
    if (!j.is_array()) throw ParseError("expected a list of elements");
    std::vector<std::size_t> out;
    for (const auto& e : j) out.push_back(parse_element_ref(p, e));
    return out;
}

std::string render_elements(const FinitePoset& p, const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + p.render(xs[i]);
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const auto v = std::stoll(trim(s), &used);
        if (used != trim(s).size() || v < 0) throw ParseError("");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ParseError(std::string("bad ") + what + " '" + s + "'");
    }
}

std::vector<std::size_t> chain_positions(const FinitePoset& p) {
    if (!p.is_chain()) throw Unsupported("barcodes need a chain poset; use the diagram command instead");
    const auto order = p.chain_order();
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    return pos;
}

}  // namespace

ComplexSpec parse_document(const json& doc) {
    try {
        if (!doc.is_object()) throw ParseError("document must be a JSON object");
        if (doc.contains("format_version") && doc.at("format_version") != kFormatVersion) {
            throw ParseError("unsupported format_version");
        }
        ComplexSpec spec;
        spec.field = FieldSpec::gf(2);
        if (doc.contains("field")) {
            if (!doc.at("field").is_string()) throw ParseError("field must be a string");
            spec.field = FieldSpec::parse(doc.at("field").get<std::string>());
        }
        spec.poset = parse_poset(require(doc, "poset", "document"));
        if (doc.contains("cells")) {
            if (!doc.at("cells").is_array()) throw ParseError("cells must be a list");
            for (const auto& c : doc.at("cells")) spec.cells.push_back(parse_cell(spec.poset, c));
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    } catch (const UnknownElement& e) {
        throw ParseError(e.what());
    }
}

ComplexSpec load_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return parse_document(doc);
}

json document_to_json(const ComplexSpec& spec) {
    json cells = json::array();
    for (const auto& c : spec.cells) {
        json j{{"id", c.id}, {"dim", c.dim}};
        if (c.simplex) {
            if (c.dim > 0 || !c.vertices.empty()) j["vertices"] = c.vertices;
        } else {
            json b = json::array();
            for (const auto& [face, q] : c.faces) b.push_back({face, coefficient_to_json(q)});
            j["boundary"] = b;
        }
        j["births"] = elements_to_json(spec.poset, c.births);
        cells.push_back(std::move(j));
    }
    return {{"format_version", kFormatVersion},
            {"field", spec.field.to_string()},
            {"poset", poset_to_json(spec.poset)},
            {"cells", cells}};
}

std::size_t parse_element_ref(const FinitePoset& p, const json& ref) {
    if (ref.is_string()) return p.index_of(ref.get<std::string>());
    if (ref.is_number_integer()) return p.index_of(Grade{ref.get<long>()});
    if (ref.is_array()) {
        Grade g;
        for (const auto& c : ref) g.push_back(as_long(c, "grade coordinate"));
        return p.index_of(g);
    }
    throw ParseError("element reference must be a grade or a label");
}

json element_to_json(const FinitePoset& p, std::size_t x) {
    const auto& e = p.element(x);
    if (!e.grade) return e.label;
    if (e.grade->size() == 1) return e.grade->front();
    return *e.grade;
}

UpSet parse_open(const FinitePoset& p, const std::string& text) {
    auto t = trim(text);
    if (t.size() >= 2 && t.front() == '{' && t.back() == '}') t = trim(t.substr(1, t.size() - 2));
    if (t.empty() || t == "inf" || t == "empty") return UpSet::empty(p);
    std::vector<std::size_t> gens;
    for (const auto& tok : split_generators(t)) {
        if (tok.empty()) throw ParseError("empty generator in open '" + text + "'");
        try {
            gens.push_back(p.index_of(tok));
        } catch (const UnknownElement&) {
            std::string compact;
            for (char c : tok)
                if (c != ' ') compact += c;
            try {
                gens.push_back(p.index_of(compact));
            } catch (const UnknownElement&) {
                throw UnknownElement("open '" + text + "' names unknown element '" + tok + "'");
            }
        }
    }
    return generated_up_set(p, gens);
}

DiagramEntry make_entry(const FinitePoset& p, std::size_t degree, const PairOpen& pair, std::size_t multiplicity) {
    DiagramEntry e{degree, min_elements(p, pair.birth), min_elements(p, pair.death), multiplicity};
    std::sort(e.birth.begin(), e.birth.end(), ElementKey{&p});
    std::sort(e.death.begin(), e.death.end(), ElementKey{&p});
    return e;
}

void sort_entries(const FinitePoset& p, std::vector<DiagramEntry>& entries) {
    std::stable_sort(entries.begin(), entries.end(), [&](const DiagramEntry& a, const DiagramEntry& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (list_less(p, a.birth, b.birth)) return true;
        if (list_less(p, b.birth, a.birth)) return false;
        if (a.death.empty() != b.death.empty()) return b.death.empty();
        return list_less(p, a.death, b.death);
    });
}

json diagram_to_json(const FinitePoset& p, const std::vector<DiagramEntry>& entries) {
    json out = json::array();
    for (const auto& e : entries) {
        out.push_back({{"degree", e.degree},
                       {"birth", elements_to_json(p, e.birth)},
                       {"death", e.death.empty() ? json("inf") : elements_to_json(p, e.death)},
                       {"multiplicity", e.multiplicity}});
    }
    return {{"format_version", kFormatVersion}, {"entries", out}};
}

std::vector<DiagramEntry> diagram_from_json(const FinitePoset& p, const json& doc) {
    try {
        std::vector<DiagramEntry> out;
        for (const auto& e : require(doc, "entries", "diagram")) {
            out.push_back({e.at("degree").get<std::size_t>(), elements_from_json(p, e.at("birth"), false),
                           elements_from_json(p, e.at("death"), true), e.at("multiplicity").get<std::size_t>()});
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

std::string diagram_to_csv(const FinitePoset& p, const std::vector<DiagramEntry>& entries) {
    std::ostringstream os;
    os << "degree,birth,death,multiplicity\n";
    for (const auto& e : entries) {
        os << e.degree << ',' << csv_field(render_elements(p, e.birth)) << ','
           << (e.death.empty() ? std::string("inf") : csv_field(render_elements(p, e.death))) << ','
           << e.multiplicity << '\n';
    }
    return os.str();
}

std::vector<DiagramEntry> diagram_from_csv(const FinitePoset& p, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<DiagramEntry> out;
    if (!std::getline(in, line) || trim(line) != "degree,birth,death,multiplicity") {
        throw ParseError("diagram CSV must start with the header row");
    }
    auto elements = [&](const std::string& field) {
        std::vector<std::size_t> xs;
        for (const auto& tok : split_generators(field)) xs.push_back(p.index_of(tok));
        return xs;
    };
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto f = csv_split(line);
        if (f.size() != 4) throw ParseError("diagram CSV rows need four fields");
        out.push_back({parse_count(f[0], "degree"), elements(f[1]), f[2] == "inf" ? std::vector<std::size_t>{} : elements(f[2]),
                       parse_count(f[3], "multiplicity")});
    }
    return out;
}

std::vector<Bar> bars_from_diagram(const FinitePoset& p, const std::vector<DiagramEntry>& entries) {
    const auto pos = chain_positions(p);
    std::vector<Bar> bars;
    for (const auto& e : entries) {
        if (e.birth.size() != 1 || e.death.size() > 1) throw Error("non-principal open on a chain");
        Bar b{e.degree, pos[e.birth.front()], std::nullopt, e.multiplicity};
        if (!e.death.empty()) b.death = pos[e.death.front()];
        bars.push_back(b);
    }
    return normalize_bars(std::move(bars));
}

std::vector<Bar> normalize_bars(std::vector<Bar> bars) {
    std::map<std::tuple<std::size_t, std::size_t, bool, std::size_t>, std::size_t> merged;
    for (const auto& b : bars) {
        if (b.multiplicity == 0) continue;
        merged[{b.degree, b.birth, !b.death.has_value(), b.death.value_or(0)}] += b.multiplicity;
    }
    std::vector<Bar> out;
    for (const auto& [k, m] : merged) {
        const auto& [deg, birth, inf, death] = k;
        out.push_back({deg, birth, inf ? std::nullopt : std::optional<std::size_t>(death), m});
    }
    return out;
}

namespace {

std::string render_position(const FinitePoset& p, std::size_t position) { return p.render(p.chain_order()[position]); }

}  // namespace

std::string render_bar(const FinitePoset& p, const Bar& bar) {
    std::string s = "H" + std::to_string(bar.degree) + " [" + render_position(p, bar.birth) + ", " +
                    (bar.death ? render_position(p, *bar.death) : std::string("inf")) + ")";
    if (bar.multiplicity != 1) s += " x" + std::to_string(bar.multiplicity);
    return s;
}

json bars_to_json(const FinitePoset& p, const std::vector<Bar>& bars) {
    const auto order = p.chain_order();
    json out = json::array();
    for (const auto& b : bars) {
        out.push_back({{"degree", b.degree},
                       {"birth", element_to_json(p, order[b.birth])},
                       {"death", b.death ? element_to_json(p, order[*b.death]) : json("inf")},
                       {"multiplicity", b.multiplicity}});
    }
    return {{"format_version", kFormatVersion}, {"bars", out}};
}

std::string bars_to_csv(const FinitePoset& p, const std::vector<Bar>& bars) {
    std::ostringstream os;
    os << "degree,birth,death,multiplicity\n";
    for (const auto& b : bars) {
        os << b.degree << ',' << csv_field(render_position(p, b.birth)) << ','
           << (b.death ? csv_field(render_position(p, *b.death)) : std::string("inf")) << ',' << b.multiplicity
           << '\n';
    }
    return os.str();
}

std::string bars_to_svg(const FinitePoset& p, const std::vector<Bar>& bars) {
    const std::size_t steps = std::max<std::size_t>(p.size(), 1);
    const int left = 60, right = 30, top = 20, row = 18, width = 640;
    const double unit = static_cast<double>(width - left - right) / static_cast<double>(steps);
    std::size_t rows = 0;
    for (const auto& b : bars) rows += b.multiplicity;
    const int height = top * 2 + row * static_cast<int>(rows) + 20;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int y = top;
    for (const auto& b : bars) {
        for (std::size_t m = 0; m < b.multiplicity; ++m) {
            const double x0 = left + unit * static_cast<double>(b.birth);
            const double x1 = b.death ? left + unit * static_cast<double>(*b.death) : width - right;
            os << "<line x1=\"" << x0 << "\" y1=\"" << y + row / 2 << "\" x2=\"" << x1 << "\" y2=\"" << y + row / 2
               << "\" stroke=\"" << colors[b.degree % 4] << "\" stroke-width=\"6\"/>\n";
            os << "<text x=\"4\" y=\"" << y + row / 2 + 4 << "\" font-size=\"11\" font-family=\"monospace\">H" << b.degree
               << "</text>\n";
            y += row;
        }
    }
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = left + unit * static_cast<double>(i);
        os << "<text x=\"" << x << "\" y=\"" << height - 6 << "\" font-size=\"11\" font-family=\"monospace\">"
           << (i < p.size() ? render_position(p, i) : "") << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cadph
