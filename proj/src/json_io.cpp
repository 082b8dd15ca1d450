#include "sisrec/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace sisrec {

using nlohmann::json;

json signal_to_json(const TwoSidedSequence& x, std::int64_t n, double sigma) {
    json j;
    j["n"] = n;
    j["sigma"] = sigma;
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(2 * n + 1));
    im.reserve(static_cast<std::size_t>(2 * n + 1));
    for (std::int64_t t = -n; t <= n; ++t) {
        re.push_back(x.at(t).real());
        im.push_back(x.at(t).imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

TwoSidedSequence signal_from_json(const json& j, std::int64_t* n_out, double* sigma_out) {
    const std::int64_t n = j.at("n").get<std::int64_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size() || re.size() != static_cast<std::size_t>(2 * n + 1))
        throw std::invalid_argument("signal_from_json: arrays must have length 2n+1");
    if (n_out) *n_out = n;
    if (sigma_out) *sigma_out = j.value("sigma", 0.0);
    std::vector<cplx> v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) v[i] = cplx{re[i], im[i]};
    return TwoSidedSequence(-n, std::move(v));
}

json spectrum_to_json(const SpectrumVec& a) {
    json j;
    j["n"] = a.n;
    j["domain"] = "spectrum";
    std::vector<double> re, im;
    for (const cplx& z : a.values) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

SpectrumVec spectrum_from_json(const json& j) {
    if (j.value("domain", "") != "spectrum")
        throw std::invalid_argument("spectrum_from_json: missing domain marker");
    const std::int64_t n = j.at("n").get<std::int64_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size() || re.size() != static_cast<std::size_t>(2 * n + 1))
        throw std::invalid_argument("spectrum_from_json: arrays must have length 2n+1");
    SpectrumVec s;
    s.n = n;
    s.values.resize(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) s.values[i] = cplx{re[i], im[i]};
    return s;
}

json spec_to_json(const SisSpec& spec) {
    json roots = json::array();
    for (const Root& r : spec.roots())
        roots.push_back({{"re", r.w.real()}, {"im", r.w.imag()}, {"mult", r.multiplicity}});
    return json{{"roots", roots}};
}

SisSpec spec_from_json(const json& j) {
    std::vector<Root> roots;
    for (const auto& r : j.at("roots"))
        roots.push_back(Root{cplx{r.at("re").get<double>(), r.at("im").get<double>()},
                             r.value("mult", 1)});
    return SisSpec(std::move(roots));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace sisrec
