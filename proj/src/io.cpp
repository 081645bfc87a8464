#include "fuglede/io.hpp"

#include "fuglede/error.hpp"
#include "fuglede/spectral.hpp"
#include "fuglede/tiling.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace fuglede {

using nlohmann::json;

namespace {

// Line and column (both 1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte just past the offending token, counting from 1.
        const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed JSON", line, column);
    }
}

[[noreturn]] void schema_error(const std::string& what)
{
    throw ParseError("schema: " + what, 0, 0);
}

std::uint64_t as_unsigned(const json& j, const std::string& what)
{
    if (!j.is_number_integer())
        schema_error(what + " must be an integer");
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    const auto v = j.get<std::int64_t>();
    if (v < 0)
        throw RangeError(what + " = " + std::to_string(v) + " is negative");
    return static_cast<std::uint64_t>(v);
}

bool is_element_json(const json& j)
{
    return j.is_array() && j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_number()
        && j[0][1].is_number() && j[1].is_number();
}

Element parse_element(const GroupSpec& g, const json& j, std::size_t position)
{
    const auto where = " (element #" + std::to_string(position) + ")";
    if (!is_element_json(j))
        schema_error("element #" + std::to_string(position) + " must look like [[u1,u2],v]");
    const auto u1 = as_unsigned(j[0][0], "u1" + where);
    const auto u2 = as_unsigned(j[0][1], "u2" + where);
    const auto v = as_unsigned(j[1], "v" + where);
    if (u1 >= g.p())
        throw RangeError("u1 = " + std::to_string(u1) + " is not below p = " + std::to_string(g.p()) + where);
    if (u2 >= g.p())
        throw RangeError("u2 = " + std::to_string(u2) + " is not below p = " + std::to_string(g.p()) + where);
    if (v >= g.q())
        throw RangeError("v = " + std::to_string(v) + " is not below q = " + std::to_string(g.q()) + where);
    return {static_cast<std::uint32_t>(u1), static_cast<std::uint32_t>(u2), static_cast<std::uint32_t>(v)};
}

json element_json(const Element& e)
{
    return json::array({json::array({e.u1, e.u2}), e.v});
}

json set_json(const GroupSpec& g, const SubsetMask& s)
{
    json out = json::array();
    for (auto i : s.indices())
        out.push_back(element_json(g.element(i)));
    return out;
}

SubsetMask parse_set_array(const GroupSpec& g, const json& j, const std::string& field)
{
    if (!j.is_array())
        schema_error(field + " must be an array of elements");
    SubsetMask s(g.order());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto idx = g.index(parse_element(g, j[i], i));
        if (s.contains(idx))
            throw DuplicateElement(field + " lists " + to_string(g.element(idx)) + " twice");
        s.insert(idx);
    }
    return s;
}

GroupSpec parse_group_fields(const json& j)
{
    if (!j.is_object() || !j.contains("p") || !j.contains("q"))
        schema_error("expected an object with integer fields \"p\" and \"q\"");
    return make_group(as_unsigned(j["p"], "p"), as_unsigned(j["q"], "q"));
}

} // namespace

Multiset SetFile::weights() const
{
    if (const auto* m = std::get_if<Multiset>(&contents))
        return *m;
    return Multiset::indicator(std::get<SubsetMask>(contents));
}

SetFile parse_set_file(std::string_view text)
{
    const auto j = parse_json(text);
    auto g = parse_group_fields(j);
    if (!j.contains("elements") || !j["elements"].is_array())
        schema_error("\"elements\" must be an array");
    bool multiset = false;
    if (j.contains("multiset")) {
        if (!j["multiset"].is_boolean())
            schema_error("\"multiset\" must be a boolean");
        multiset = j["multiset"].get<bool>();
    }
    const auto& elements = j["elements"];
    if (!multiset)
        return SetFile{g, parse_set_array(g, elements, "elements")};

    Multiset m(g.order());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const auto& entry = elements[i];
        if (is_element_json(entry)) {
            m.add(g.index(parse_element(g, entry, i)));
        } else if (entry.is_array() && entry.size() == 2 && is_element_json(entry[0])) {
            m.add(g.index(parse_element(g, entry[0], i)), as_unsigned(entry[1], "count (element #" + std::to_string(i) + ")"));
        } else {
            schema_error("element #" + std::to_string(i) + " must look like [[u1,u2],v] or [[[u1,u2],v],count]");
        }
    }
    return SetFile{g, std::move(m)};
}

std::string write_set_file(const GroupSpec& g, const SubsetMask& s)
{
    json j;
    j["p"] = g.p();
    j["q"] = g.q();
    j["elements"] = set_json(g, s);
    return j.dump() + "\n";
}

std::string write_set_file(const GroupSpec& g, const Multiset& m)
{
    json j;
    j["p"] = g.p();
    j["q"] = g.q();
    j["multiset"] = true;
    j["elements"] = json::array();
    for (ElementIndex i = 0; i < m.universe(); ++i)
        if (m[i] > 0)
            j["elements"].push_back(json::array({element_json(g.element(i)), m[i]}));
    return j.dump() + "\n";
}

CoefficientMatrix parse_matrix_file(std::string_view text)
{
    const auto j = parse_json(text);
    const json& rows = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
    if (!rows.is_array() || rows.empty())
        schema_error("matrix must be a nonempty array of rows");
    std::vector<std::vector<std::int64_t>> data;
    for (const auto& row : rows) {
        if (!row.is_array())
            schema_error("matrix rows must be arrays");
        auto& out = data.emplace_back();
        for (const auto& x : row) {
            if (!x.is_number_integer())
                schema_error("matrix entries must be integers");
            out.push_back(x.get<std::int64_t>());
        }
        if (out.size() != data.front().size())
            schema_error("matrix rows differ in length");
    }
    const auto p = data.size();
    const auto q = data.front().size();
    if (!is_prime(p) || !is_prime(q))
        throw NotPrime("matrix shape " + std::to_string(p) + "x" + std::to_string(q) + " is not prime x prime");
    if (p == q)
        throw EqualPrimes("matrix shape must use two different primes");
    return CoefficientMatrix::from_rows(data);
}

// ---------------------------------------------------------------------------
// Certificates

std::string_view to_string(CertificateKind kind)
{
    switch (kind) {
    case CertificateKind::Spectrum:
        return "spectrum";
    case CertificateKind::Complement:
        return "complement";
    case CertificateKind::NoSpectrum:
        return "no_spectrum";
    case CertificateKind::NoComplement:
        return "no_complement";
    case CertificateKind::Violation:
        return "violation";
    }
    return "?";
}

CertificateKind certificate_kind_from_string(std::string_view s)
{
    for (auto k : {CertificateKind::Spectrum, CertificateKind::Complement, CertificateKind::NoSpectrum,
             CertificateKind::NoComplement, CertificateKind::Violation})
        if (to_string(k) == s)
            return k;
    schema_error("unknown certificate kind \"" + std::string(s) + "\"");
}

CertificateRecord spectrum_record(const GroupSpec& g, const SubsetMask& s, const SpectrumSearch& search)
{
    CertificateRecord rec;
    rec.kind = search.found() ? CertificateKind::Spectrum : CertificateKind::NoSpectrum;
    rec.p = g.p();
    rec.q = g.q();
    rec.subject = s;
    if (search.found())
        rec.witness = search.certificate->spectrum;
    rec.exhaustion["spectrum_nodes"] = search.explored_nodes;
    return rec;
}

CertificateRecord complement_record(const GroupSpec& g, const SubsetMask& s, const ComplementSearch& search)
{
    CertificateRecord rec;
    rec.kind = search.found() ? CertificateKind::Complement : CertificateKind::NoComplement;
    rec.p = g.p();
    rec.q = g.q();
    rec.subject = s;
    if (search.found())
        rec.witness = search.certificate->complement;
    rec.exhaustion["complement_nodes"] = search.explored_nodes;
    return rec;
}

CertificateRecord violation_record(const GroupSpec& g, const Violation& v)
{
    CertificateRecord rec;
    rec.kind = CertificateKind::Violation;
    rec.p = g.p();
    rec.q = g.q();
    rec.subject = v.set;
    rec.exhaustion["spectral"] = v.spectral ? 1 : 0;
    rec.exhaustion["tile"] = v.tile ? 1 : 0;
    rec.exhaustion["spectrum_nodes"] = v.spectrum_nodes;
    rec.exhaustion["complement_nodes"] = v.complement_nodes;
    return rec;
}

std::string to_json_line(const CertificateRecord& rec)
{
    const auto g = make_group(rec.p, rec.q);
    json j;
    j["schema"] = kCertificateSchema;
    j["kind"] = to_string(rec.kind);
    j["group"] = {{"p", rec.p}, {"q", rec.q}};
    j["subject"] = set_json(g, rec.subject);
    if (rec.witness)
        j["witness"] = set_json(g, *rec.witness);
    j["exhaustion"] = json::object();
    for (const auto& [k, v] : rec.exhaustion)
        j["exhaustion"][k] = v;
    j["tool_version"] = rec.tool_version;
    return j.dump();
}

CertificateRecord parse_certificate_line(std::string_view line)
{
    const auto j = parse_json(line);
    if (!j.is_object())
        schema_error("certificate must be an object");
    if (!j.contains("schema") || as_unsigned(j["schema"], "schema") != kCertificateSchema)
        schema_error("unsupported certificate schema");
    if (!j.contains("kind") || !j["kind"].is_string())
        schema_error("certificate needs a \"kind\"");
    if (!j.contains("group"))
        schema_error("certificate needs a \"group\"");
    const auto g = parse_group_fields(j["group"]);

    CertificateRecord rec;
    rec.kind = certificate_kind_from_string(j["kind"].get<std::string>());
    rec.p = g.p();
    rec.q = g.q();
    if (!j.contains("subject"))
        schema_error("certificate needs a \"subject\"");
    rec.subject = parse_set_array(g, j["subject"], "subject");
    const bool needs_witness = rec.kind == CertificateKind::Spectrum || rec.kind == CertificateKind::Complement;
    if (needs_witness != j.contains("witness"))
        schema_error(needs_witness ? "positive certificate without a witness" : "negative certificate with a witness");
    if (needs_witness)
        rec.witness = parse_set_array(g, j["witness"], "witness");
    if (j.contains("exhaustion")) {
        if (!j["exhaustion"].is_object())
            schema_error("\"exhaustion\" must be an object");
        for (const auto& [k, v] : j["exhaustion"].items())
            rec.exhaustion[k] = as_unsigned(v, "exhaustion." + k);
    }
    if (!j.contains("tool_version") || !j["tool_version"].is_string())
        schema_error("certificate needs a \"tool_version\"");
    rec.tool_version = j["tool_version"].get<std::string>();
    return rec;
}

bool reverify(const CertificateRecord& rec)
{
    const auto g = make_group(rec.p, rec.q);
    switch (rec.kind) {
    case CertificateKind::Spectrum:
        return rec.witness && verify_spectral_pair(g, rec.subject, *rec.witness);
    case CertificateKind::Complement:
        return rec.witness && verify_tiling(g, rec.subject, *rec.witness);
    case CertificateKind::NoSpectrum:
        return !rec.witness && !find_spectrum(g, rec.subject).found();
    case CertificateKind::NoComplement:
        return !rec.witness && !find_complement(g, rec.subject).found();
    case CertificateKind::Violation: {
        const bool spectral = find_spectrum(g, rec.subject).found();
        const bool tile = find_complement(g, rec.subject).found();
        const auto flag = [&](const char* key) {
            const auto it = rec.exhaustion.find(key);
            return it != rec.exhaustion.end() && it->second != 0;
        };
        return spectral != tile && flag("spectral") == spectral && flag("tile") == tile;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string mode_text(const VerifyMode& mode)
{
    std::ostringstream os;
    if (const auto* ex = std::get_if<ExhaustiveMode>(&mode)) {
        os << "exhaustive (" << (ex->orbit_reduction ? "orbit representatives" : "every subset") << ")";
        if (ex->size)
            os << ", size " << *ex->size;
    } else {
        const auto& sm = std::get<SampledMode>(mode);
        os << "sampled (seed " << sm.seed << ", " << sm.trials << " trials)";
        if (sm.size)
            os << ", size " << *sm.size;
    }
    return os.str();
}

} // namespace

std::string render_report(const ConjectureReport& report)
{
    const auto g = make_group(report.p, report.q);
    std::ostringstream os;
    os << "group: Z_" << report.p << "^2 x Z_" << report.q << " (|G| = " << g.order() << ")\n";
    os << "mode: " << mode_text(report.mode) << "\n";
    if (std::holds_alternative<ExhaustiveMode>(report.mode) && std::get<ExhaustiveMode>(report.mode).orbit_reduction)
        os << "orbits scanned: " << report.orbits_scanned << "\n";
    os << "subsets examined: " << report.subsets_examined << "\n";
    os << "subsets covered: " << report.subsets_covered;
    if (report.empty_sets)
        os << " (including " << report.empty_sets << " empty)";
    os << "\n\n";
    os << std::left << std::setw(8) << "class" << std::right << std::setw(12) << "both" << std::setw(15) << "spectral-only"
       << std::setw(12) << "tile-only" << std::setw(12) << "neither" << "\n";
    for (const auto& [m, t] : report.by_class)
        os << std::left << std::setw(8) << SizeClass{m}.label(g) << std::right << std::setw(12) << t.both << std::setw(15)
           << t.spectral_only << std::setw(12) << t.tile_only << std::setw(12) << t.neither << "\n";
    os << "\nsearch nodes: spectrum " << report.spectrum_nodes << ", complement " << report.complement_nodes << "\n";
    os << "violations: " << report.violations.size() << " (spectral not tile: " << report.spectral_not_tile()
       << ", tile not spectral: " << report.tile_not_spectral() << ")\n";
    for (const auto& v : report.violations) {
        os << "  " << set_json(g, v.set).dump() << (v.spectral ? " spectral, not a tile" : " tile, not spectral")
           << " [spectrum nodes " << v.spectrum_nodes << ", complement nodes " << v.complement_nodes << "]\n";
    }
    return os.str();
}

std::string report_to_json(const ConjectureReport& report)
{
    const auto g = make_group(report.p, report.q);
    json j;
    j["group"] = {{"p", report.p}, {"q", report.q}, {"n", g.order()}};
    if (const auto* ex = std::get_if<ExhaustiveMode>(&report.mode)) {
        j["mode"] = {{"kind", "exhaustive"}, {"orbit_reduction", ex->orbit_reduction}};
        if (ex->size)
            j["mode"]["size"] = *ex->size;
    } else {
        const auto& sm = std::get<SampledMode>(report.mode);
        j["mode"] = {{"kind", "sampled"}, {"seed", sm.seed}, {"trials", sm.trials}};
        if (sm.size)
            j["mode"]["size"] = *sm.size;
    }
    j["classes"] = json::array();
    for (const auto& [m, t] : report.by_class)
        j["classes"].push_back({{"m", m}, {"label", SizeClass{m}.label(g)}, {"both", t.both},
            {"spectral_only", t.spectral_only}, {"tile_only", t.tile_only}, {"neither", t.neither}});
    j["empty_sets"] = report.empty_sets;
    j["subsets_examined"] = report.subsets_examined;
    j["subsets_covered"] = report.subsets_covered;
    j["orbits_scanned"] = report.orbits_scanned;
    j["spectrum_nodes"] = report.spectrum_nodes;
    j["complement_nodes"] = report.complement_nodes;
    j["violations"] = json::array();
    for (const auto& v : report.violations)
        j["violations"].push_back(json::parse(to_json_line(violation_record(g, v))));
    return j.dump(2) + "\n";
}

std::string render_lemma_report(const LemmaReport& report)
{
    std::ostringstream os;
    os << "lemma suite: p=" << report.p << " q=" << report.q << " seed=" << report.seed << " trials=" << report.trials << "\n";
    for (const auto& r : report.results) {
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
        if (!r.passed)
            os << ": " << r.counterexample;
        os << "\n";
    }
    os << (report.all_passed() ? "all lemmas pass" : "lemma failures found") << "\n";
    return os.str();
}

} // namespace fuglede
