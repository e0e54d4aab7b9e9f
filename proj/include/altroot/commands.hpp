#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace altroot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

int cmd_classify(const std::filesystem::path& zone_a, const std::filesystem::path& zone_b, std::ostream& out,
                 std::ostream& err);

// Matrix of the first two roots in the universe unless a pair "a,b" is given.
int cmd_matrix(const std::filesystem::path& universe_dir, std::ostream& out, std::ostream& err,
               const std::optional<std::string>& pair = std::nullopt);

// With seeds > 1, seed s + k writes <stem>.seed<s+k><ext> and summaries print in seed order.
int cmd_simulate(const std::filesystem::path& scenario, const std::filesystem::path& csv, std::size_t seeds,
                 std::ostream& out, std::ostream& err);

}  // namespace altroot
