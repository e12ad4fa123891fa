#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace mslab {

using json = nlohmann::json;

enum class Verdict { Pass, Fail, Undetermined };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

/// Uniform result record for every check. A failing report always carries
/// a witness; `result` holds the constructed object for constructive ops.
struct WitnessReport {
    std::string check;
    json params = json::object();
    Verdict verdict = Verdict::Pass;
    std::optional<json> witness;
    std::map<std::string, json> counts;
    std::optional<std::string> caveat;
    std::optional<json> result;
    std::int64_t elapsed_ms = 0;

    bool passed() const { return verdict == Verdict::Pass; }

    void fail(json w) {
        verdict = Verdict::Fail;
        witness = std::move(w);
    }

    json to_json() const {
        if (verdict == Verdict::Fail && !witness)
            throw std::logic_error("report '" + check + "' fails without a witness");
        json j;
        j["check"] = check;
        j["params"] = params;
        j["verdict"] = to_string(verdict);
        j["witness"] = witness ? *witness : json(nullptr);
        j["counts"] = json::object();
        for (const auto& [k, v] : counts) j["counts"][k] = v;
        j["caveat"] = caveat ? json(*caveat) : json(nullptr);
        if (result) j["result"] = *result;
        j["elapsed_ms"] = elapsed_ms;
        return j;
    }
};

}  // namespace mslab
