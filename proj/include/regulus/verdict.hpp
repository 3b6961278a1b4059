#pragma once

// Machine-readable outcome of one claim check, shared by every driver.

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include <regulus/series.hpp>

namespace regulus {

inline constexpr int report_schema_version = 1;

enum class Status { established, mismatch, shallow };

std::string to_string(Status s);

struct Verdict {
    std::string claim_id;
    std::size_t bound = 0;
    Status status = Status::established;
    std::optional<Mismatch> first_mismatch;
    double runtime_ms = 0;
    std::string message;
    nlohmann::json details = nlohmann::json::object();

    bool established() const noexcept { return status == Status::established; }
};

Verdict shallow_verdict(std::size_t bound, std::size_t needed, std::size_t available);

/// Fold a Congruence into a verdict (mismatch or established through `upto`).
Verdict from_congruence(const Congruence& c);

nlohmann::json to_json(const Verdict& v, bool timing = true);

/// 0 if all established; otherwise 1 if any mismatch, else 3.
int exit_code(std::span<const Verdict> verdicts);

/// Worst status wins: a mismatch outranks a shallow check.
Status combine(Status a, Status b);

} // namespace regulus
