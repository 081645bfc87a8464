#pragma once

#include "fuglede/exact_sums.hpp"
#include "fuglede/group.hpp"
#include "fuglede/lemmas.hpp"
#include "fuglede/verifier.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fuglede {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kCertificateSchema = 1;

/// {"p": int, "q": int, "multiset": bool?, "elements": [[[u1,u2],v] | [[[u1,u2],v], count] ...]}
struct SetFile {
    GroupSpec group;
    std::variant<SubsetMask, Multiset> contents;

    bool is_multiset() const noexcept { return std::holds_alternative<Multiset>(contents); }
    /// The contents as a multiset (indicator in set mode).
    Multiset weights() const;
};

SetFile parse_set_file(std::string_view text);
/// Elements ascending by index, one line per element.
std::string write_set_file(const GroupSpec& g, const SubsetMask& s);
std::string write_set_file(const GroupSpec& g, const Multiset& m);

/// A p x q integer matrix: either a bare array of rows or {"matrix": [...]}. Dimensions must be distinct primes.
CoefficientMatrix parse_matrix_file(std::string_view text);

enum class CertificateKind { Spectrum, Complement, NoSpectrum, NoComplement, Violation };

std::string_view to_string(CertificateKind kind);
CertificateKind certificate_kind_from_string(std::string_view s);

struct CertificateRecord {
    CertificateKind kind = CertificateKind::Spectrum;
    std::uint32_t p = 0;
    std::uint32_t q = 0;
    SubsetMask subject;
    std::optional<SubsetMask> witness; ///< present iff kind is Spectrum or Complement
    std::map<std::string, std::uint64_t> exhaustion;
    std::string tool_version{kToolVersion};

    friend bool operator==(const CertificateRecord&, const CertificateRecord&) = default;
};

CertificateRecord spectrum_record(const GroupSpec& g, const SubsetMask& s, const SpectrumSearch& search);
CertificateRecord complement_record(const GroupSpec& g, const SubsetMask& s, const ComplementSearch& search);
CertificateRecord violation_record(const GroupSpec& g, const Violation& v);

/// One JSON object, no trailing newline, carrying "schema": 1.
std::string to_json_line(const CertificateRecord& rec);
CertificateRecord parse_certificate_line(std::string_view line);

/// Re-checks a record from scratch: witnesses are verified, negatives re-searched.
bool reverify(const CertificateRecord& rec);

std::string render_report(const ConjectureReport& report);
std::string report_to_json(const ConjectureReport& report);
std::string render_lemma_report(const LemmaReport& report);

} // namespace fuglede
