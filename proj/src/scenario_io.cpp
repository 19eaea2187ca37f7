#include "herding/scenario_io.hpp"

#include "herding/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace herding {

namespace {

using nlohmann::json;

struct FieldRef {
    const char* key;
    double HerdingScenario::*top = nullptr;
    double MarketParams::*market = nullptr;
    double HouseholdParams::*follower = nullptr;
    double HouseholdParams::*leader = nullptr;
};

const std::array<FieldRef, 14>& fields()
{
    static const std::array<FieldRef, 14> table{{
        {"r", nullptr, &MarketParams::r},
        {"v", nullptr, &MarketParams::v},
        {"sigma", nullptr, &MarketParams::sigma},
        {"T", nullptr, &MarketParams::horizon},
        {"rho", nullptr, &MarketParams::rho},
        {"theta", &HerdingScenario::theta},
        {"follower.alpha", nullptr, nullptr, &HouseholdParams::alpha},
        {"follower.beta", nullptr, nullptr, &HouseholdParams::beta},
        {"follower.gamma", nullptr, nullptr, &HouseholdParams::gamma},
        {"follower.x0", nullptr, nullptr, &HouseholdParams::x0},
        {"leader.alpha", nullptr, nullptr, nullptr, &HouseholdParams::alpha},
        {"leader.beta", nullptr, nullptr, nullptr, &HouseholdParams::beta},
        {"leader.gamma", nullptr, nullptr, nullptr, &HouseholdParams::gamma},
        {"leader.x0", nullptr, nullptr, nullptr, &HouseholdParams::x0},
    }};
    return table;
}

double& field(HerdingScenario& s, const FieldRef& f)
{
    if (f.top) return s.*f.top;
    if (f.market) return s.market.*f.market;
    if (f.follower) return s.follower.*f.follower;
    return s.leader.*f.leader;
}

std::size_t line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Collapses nested household objects into dotted keys.
std::map<std::string, json> flatten(const json& doc)
{
    std::map<std::string, json> flat;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object()) {
            for (const auto& [sub, inner] : value.items()) {
                flat[key + "." + sub] = inner;
            }
        } else {
            flat[key] = value;
        }
    }
    return flat;
}

} // namespace

std::string scenario_to_json(const HerdingScenario& s)
{
    // Ordered output keeps files diff-friendly.
    nlohmann::ordered_json doc;
    auto copy = s;
    for (const auto& f : fields()) {
        doc[f.key] = field(copy, f);
    }
    return doc.dump(2) + "\n";
}

HerdingScenario scenario_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << "scenario parse error at line " << line_of(text, e.byte) << ": " << e.what();
        throw ValidationError(msg.str());
    }
    if (!doc.is_object()) {
        throw ValidationError("scenario must be a JSON object");
    }

    auto flat = flatten(doc);
    HerdingScenario s;
    for (const auto& f : fields()) {
        auto it = flat.find(f.key);
        if (it == flat.end()) {
            throw ValidationError(std::string("scenario is missing field '") + f.key + "'");
        }
        if (!it->second.is_number()) {
            throw ValidationError(std::string("scenario field '") + f.key + "' must be a number");
        }
        field(s, f) = it->second.get<double>();
        flat.erase(it);
    }
    if (!flat.empty()) {
        throw ValidationError("scenario has unknown field '" + flat.begin()->first + "'");
    }
    return s;
}

HerdingScenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void save_scenario(const HerdingScenario& s, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write scenario file " + path.string());
    }
    out << scenario_to_json(s);
}

} // namespace herding
