#include <regulus/verdict.hpp>

#include <cmath>

namespace regulus {

std::string to_string(Status s)
{
    switch (s) {
    case Status::established:
        return "established";
    case Status::mismatch:
        return "mismatch";
    case Status::shallow:
        return "shallow";
    }
    return "unknown";
}

Verdict shallow_verdict(std::size_t bound, std::size_t needed, std::size_t available)
{
    Verdict v;
    v.bound = bound;
    v.status = Status::shallow;
    v.message = "needs expansion depth " + std::to_string(needed) + ", only " + std::to_string(available)
                + " available";
    v.details["needed_depth"] = needed;
    v.details["available_depth"] = available;
    return v;
}

Verdict from_congruence(const Congruence& c)
{
    Verdict v;
    v.bound = c.upto;
    v.status = c.holds() ? Status::established : Status::mismatch;
    v.first_mismatch = c.first_mismatch;
    return v;
}

nlohmann::json to_json(const Verdict& v, bool timing)
{
    nlohmann::json j;
    j["claim_id"] = v.claim_id;
    j["bound"] = v.bound;
    j["status"] = to_string(v.status);
    if (v.first_mismatch)
        j["first_mismatch"] = {{"exponent", v.first_mismatch->exponent},
                               {"left", to_string(v.first_mismatch->left)},
                               {"right", to_string(v.first_mismatch->right)}};
    if (timing)
        j["runtime_ms"] = std::round(v.runtime_ms * 1000.0) / 1000.0;
    if (!v.message.empty())
        j["message"] = v.message;
    if (!v.details.empty())
        j["details"] = v.details;
    return j;
}

Status combine(Status a, Status b)
{
    auto rank = [](Status s) { return s == Status::mismatch ? 2 : s == Status::shallow ? 1 : 0; };
    return rank(a) >= rank(b) ? a : b;
}

int exit_code(std::span<const Verdict> verdicts)
{
    Status worst = Status::established;
    for (const auto& v : verdicts)
        worst = combine(worst, v.status);
    switch (worst) {
    case Status::established:
        return 0;
    case Status::mismatch:
        return 1;
    case Status::shallow:
        return 3;
    }
    return 1;
}

} // namespace regulus
