#ifndef HADFAM_JSON_IO_HPP
#define HADFAM_JSON_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hadfam/expansion.hpp"
#include "hadfam/matrix.hpp"

namespace hadfam {

inline nlohmann::json mat_to_json(const CMat& m)
{
    const long n = m.n();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (long i = 0; i < n; ++i) {
        nlohmann::json rrow = nlohmann::json::array();
        nlohmann::json irow = nlohmann::json::array();
        for (long j = 0; j < n; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return {{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline CMat mat_from_json(const nlohmann::json& j)
{
    const long n = j.at("n").get<long>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<long>(re.size()) != n || static_cast<long>(im.size()) != n)
        throw std::invalid_argument("mat_from_json: row count mismatch");
    CMat m(n);
    for (long i = 0; i < n; ++i) {
        if (static_cast<long>(re[i].size()) != n || static_cast<long>(im[i].size()) != n)
            throw std::invalid_argument("mat_from_json: column count mismatch");
        for (long j2 = 0; j2 < n; ++j2)
            m(i, j2) = cdouble(re[i][j2].get<double>(), im[i][j2].get<double>());
    }
    return m;
}

/// Custom constraint pattern: JSON list of {"diag": d, "classes": [[i,...],...]}.
inline ConstraintPattern pattern_from_json(long n, const nlohmann::json& j)
{
    KeyIndex ki(n);
    ConstraintPattern pat;
    pat.label = PatternLabel::custom;
    for (const auto& entry : j) {
        const long d = entry.at("diag").get<long>();
        if (d < 0 || d >= n)
            throw std::invalid_argument("pattern_from_json: diag out of range");
        const long g = d == 0 ? n : gcd_z(d, n);
        for (const auto& cls : entry.at("classes")) {
            std::vector<long> grp;
            for (const auto& c : cls) {
                long rc = c.get<long>();
                if (rc < 0 || rc >= g)
                    throw std::invalid_argument("pattern_from_json: class out of range");
                grp.push_back(ki.index(ParamKey{d, rc}));
            }
            if (grp.size() > 1) pat.groups.push_back(std::move(grp));
        }
    }
    return pat;
}

inline nlohmann::json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

} // namespace hadfam

#endif // HADFAM_JSON_IO_HPP
