#include "dualrank/registry.hpp"

#include "dualrank/errors.hpp"
#include "dualrank/random.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace dualrank {

namespace {

struct ParsedSpec {
    std::string head;
    std::vector<std::string> positional;
    std::map<std::string, std::string> named;
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

ParsedSpec parse(const std::string& spec)
{
    ParsedSpec p;
    const auto colon = spec.find(':');
    p.head = trim(spec.substr(0, colon));
    if (colon == std::string::npos) {
        return p;
    }
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw InputError("empty argument in variety spec '" + spec + "'");
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            p.positional.push_back(item);
        } else {
            p.named[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
        }
    }
    return p;
}

int to_int(const std::string& s, const std::string& spec)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InputError("expected an integer, got '" + s + "' in '" + spec + "'");
    }
    return v;
}

std::optional<int> named_int(const ParsedSpec& p, const std::string& key, const std::string& spec)
{
    const auto it = p.named.find(key);
    if (it == p.named.end()) {
        return std::nullopt;
    }
    return to_int(it->second, spec);
}

void require_args(const ParsedSpec& p, std::size_t positional, std::initializer_list<const char*> allowed,
                  const std::string& spec)
{
    if (p.positional.size() != positional) {
        throw InputError("wrong number of arguments in '" + spec + "'");
    }
    for (const auto& [key, value] : p.named) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw InputError("unknown option '" + key + "' in '" + spec + "'");
        }
    }
}

std::optional<Curve> curve_by_name(const std::string& name)
{
    if (name == "twisted_cubic") {
        return make_curve(CurveKind::TwistedCubic);
    }
    if (name == "conic") {
        return make_curve(CurveKind::Conic);
    }
    auto numbered = [&](const std::string& prefix) -> std::optional<int> {
        if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) {
            return std::nullopt;
        }
        return to_int(name.substr(prefix.size()), name);
    };
    if (auto N = numbered("rnc")) {
        return make_curve(CurveKind::RationalNormal, *N);
    }
    if (auto N = numbered("trig")) {
        return make_curve(CurveKind::GenericTrig, *N, 0x5eed);
    }
    return std::nullopt;
}

Curve require_curve(const std::string& name, const std::string& spec)
{
    auto c = curve_by_name(name);
    if (!c) {
        throw InputError("unknown curve '" + name + "' in '" + spec + "'");
    }
    return *c;
}

Chart base_for_cone(const std::string& name, const std::string& spec)
{
    if (auto c = curve_by_name(name)) {
        return make_curve_chart(*c);
    }
    if (name == "veronese") {
        return make_veronese();
    }
    if (name.rfind("segre(", 0) == 0 && name.back() == ')') {
        const std::string inner = name.substr(6, name.size() - 7);
        const auto dot = inner.find('.');
        if (dot != std::string::npos) {
            return make_segre(to_int(inner.substr(0, dot), spec), to_int(inner.substr(dot + 1), spec));
        }
    }
    throw InputError("unsupported cone base '" + name + "' in '" + spec + "'");
}

Chart resolve_join(const ParsedSpec& p, const std::string& spec)
{
    require_args(p, 2, {"N"}, spec);
    const Curve a = require_curve(p.positional[0], spec);
    const Curve b = require_curve(p.positional[1], spec);
    const int N = named_int(p, "N", spec).value_or(a.ambient_dim() + b.ambient_dim() + 1);
    if (N < std::max(a.ambient_dim(), b.ambient_dim()) || N < 4) {
        throw InputError("join ambient dimension too small in '" + spec + "'");
    }
    const Curve first = a.padded(N);
    Eigen::MatrixXd place = Eigen::MatrixXd::Zero(N + 1, b.ambient_dim() + 1);
    if (a.ambient_dim() + b.ambient_dim() + 2 <= N + 1) {
        place.bottomRows(b.ambient_dim() + 1).setIdentity();
    } else {
        Rng rng(derive_seed(0x701, std::uint64_t(N)));
        place = gaussian_matrix(rng, N + 1, b.ambient_dim() + 1);
    }
    return make_join(first, b.mapped(place, b.name())).chart();
}

Chart resolve_cone(const ParsedSpec& p, const std::string& spec)
{
    require_args(p, 1, {"l", "N"}, spec);
    const Chart base = base_for_cone(p.positional[0], spec);
    const int l = named_int(p, "l", spec).value_or(1);
    const int N = named_int(p, "N", spec).value_or(base.ambient_dim() + l);
    if (l < 0 || N - l < base.ambient_dim()) {
        throw InputError("cone does not fit in the ambient space in '" + spec + "'");
    }
    Eigen::MatrixXd vertex = Eigen::MatrixXd::Zero(N + 1, l);
    vertex.bottomRows(l).setIdentity();
    return make_cone(base, vertex).chart();
}

} // namespace

Chart resolve_raw(const std::string& spec)
{
    const ParsedSpec p = parse(spec);
    if (p.positional.empty() && p.named.empty()) {
        if (p.head == "veronese") {
            return make_veronese();
        }
        if (p.head == "symmetroid") {
            return make_symmetroid();
        }
        if (auto c = curve_by_name(p.head)) {
            return make_curve_chart(*c);
        }
    }
    if (p.head == "segre") {
        require_args(p, 2, {}, spec);
        return make_segre(to_int(p.positional[0], spec), to_int(p.positional[1], spec));
    }
    if (p.head == "cone_segre") {
        require_args(p, 2, {"l"}, spec);
        return make_cone_over_segre(to_int(p.positional[0], spec), to_int(p.positional[1], spec),
                                    named_int(p, "l", spec).value_or(1))
            .chart();
    }
    if (p.head == "torse") {
        require_args(p, 1, {"l"}, spec);
        return make_torse(require_curve(p.positional[0], spec), named_int(p, "l", spec).value_or(1)).chart();
    }
    if (p.head == "join") {
        return resolve_join(p, spec);
    }
    if (p.head == "cone") {
        return resolve_cone(p, spec);
    }
    throw InputError("unknown variety spec '" + spec + "'");
}

Chart resolve(const std::string& spec, std::uint64_t seed)
{
    const Chart raw = resolve_raw(spec);
    Rng rng(derive_seed(seed, 0xA11));
    const Eigen::MatrixXd rotation = random_orthogonal(rng, raw.ambient_dim() + 1);
    return compose_linear(raw, rotation, spec);
}

std::vector<std::string> catalogue_specs()
{
    return {
        "twisted_cubic",
        "torse:twisted_cubic,l=1",
        "join:conic,conic,N=5",
        "cone:conic,N=4",
        "torse:rnc5,l=2",
        "torse:rnc4,l=2",
        "symmetroid",
        "veronese",
        "segre:1,2",
        "cone_segre:1,2,l=1",
    };
}

std::vector<TableInstance> table_instances()
{
    return {
        {1, "Curve", "twisted_cubic", "Torse", {3, 1, 0, 1, 1, 2}},
        {2, "Hypersurface of rank r", "torse:twisted_cubic,l=1", "Tangentially nondegenerate variety", {3, 2, 1, 1, 0, 1}},
        {3, "Join", "join:conic,conic,N=5", "", {5, 3, 1, 2, 1, 3}},
        {4, "Cone", "cone:conic,N=4", "Hypersurface", {4, 2, 1, 1, 1, 2}},
        {5, "Multidimensional torse", "torse:rnc5,l=2", "Multidimensional torse", {5, 3, 2, 1, 1, 2}},
        {6, "Hypersurface of rank r", "torse:rnc4,l=2", "Cone", {4, 3, 2, 1, 0, 1}},
        {7, "Cubic symmetroid", "symmetroid", "Veronese variety", {5, 4, 2, 2, 0, 2}},
    };
}

} // namespace dualrank
