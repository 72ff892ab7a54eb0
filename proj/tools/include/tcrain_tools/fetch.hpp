#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcrain::tools {

struct FetchOptions {
  std::optional<std::string> bearer_token;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};
};

struct FetchFailure {
  std::string url;
  std::string reason;
};

struct FetchReport {
  std::vector<std::filesystem::path> downloaded;
  std::vector<std::filesystem::path> skipped;
  std::vector<FetchFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// One URL per line; blank lines and lines starting with '#' are ignored.
std::vector<std::string> parse_manifest(std::string_view text);

/// Local file name for a URL: the last path segment without query string.
std::string file_name_for(std::string_view url);

/// Downloads each URL into dest_dir via a temporary file and rename. Files
/// already present with the size the server reports are skipped. Network
/// errors, 5xx, 408 and 429 are retried with exponential backoff.
FetchReport fetch_all(std::span<const std::string> urls, const std::filesystem::path& dest_dir,
                      const FetchOptions& options);

}  // namespace tcrain::tools
