#include "tcrain_tools/fetch.hpp"

#include <fstream>
#include <stdexcept>
#include <thread>

#include <httplib.h>

#include "tcrain/format.hpp"

namespace tcrain::tools {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // starts with '/'
};

SplitUrl split_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw std::invalid_argument("not an absolute URL");
  }
  const std::string scheme(url.substr(0, scheme_end));
  if (scheme != "https" && scheme != "http") {
    throw std::invalid_argument("unsupported scheme '" + scheme + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = std::string(url.substr(0, path_start));
  out.path = path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));
  if (out.origin.size() <= scheme_end + 3) {
    throw std::invalid_argument("URL has no host");
  }
  return out;
}

bool retryable(int status) { return status >= 500 || status == 408 || status == 429; }

struct Attempt {
  bool ok = false;
  bool retry = false;
  std::string reason;
};

Attempt download_once(httplib::Client& client, const std::string& path, const std::filesystem::path& temp) {
  std::ofstream out(temp, std::ios::binary | std::ios::trunc);
  if (!out) {
    return {false, false, "cannot create " + temp.string()};
  }
  int status = 0;
  auto result = client.Get(
      path,
      [&](const httplib::Response& response) {
        status = response.status;
        return status >= 200 && status < 300;
      },
      [&](const char* data, std::size_t length) {
        out.write(data, static_cast<std::streamsize>(length));
        return static_cast<bool>(out);
      });
  out.close();
  if (status != 0 && (status < 200 || status >= 300)) {
    return {false, retryable(status), "HTTP " + std::to_string(status)};
  }
  if (!result) {
    return {false, true, "network error: " + httplib::to_string(result.error())};
  }
  if (!out) {
    return {false, false, "disk write failed for " + temp.string()};
  }
  return {true, false, {}};
}

std::optional<std::uintmax_t> remote_size(httplib::Client& client, const std::string& path) {
  auto result = client.Head(path);
  if (!result || result->status < 200 || result->status >= 300 || !result->has_header("Content-Length")) {
    return std::nullopt;
  }
  const auto size = parse_integer(result->get_header_value("Content-Length"));
  if (!size || *size < 0) {
    return std::nullopt;
  }
  return static_cast<std::uintmax_t>(*size);
}

}  // namespace

std::vector<std::string> parse_manifest(std::string_view text) {
  std::vector<std::string> urls;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto line = trim(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (!line.empty() && line.front() != '#') {
      urls.emplace_back(line);
    }
    if (end == std::string_view::npos) {
      break;
    }
    pos = end + 1;
  }
  return urls;
}

std::string file_name_for(std::string_view url) {
  auto stop = url.find_first_of("?#");
  std::string_view path = url.substr(0, stop);
  const auto scheme_end = path.find("://");
  if (scheme_end != std::string_view::npos) {
    const auto slash = path.find('/', scheme_end + 3);
    path = slash == std::string_view::npos ? std::string_view{} : path.substr(slash);
  }
  const auto last = path.find_last_of('/');
  std::string_view name = last == std::string_view::npos ? path : path.substr(last + 1);
  if (name.empty() || name == "." || name == "..") {
    return "index";
  }
  return std::string(name);
}

FetchReport fetch_all(std::span<const std::string> urls, const std::filesystem::path& dest_dir,
                      const FetchOptions& options) {
  FetchReport report;
  std::error_code ec;
  std::filesystem::create_directories(dest_dir, ec);
  if (ec) {
    for (const std::string& url : urls) {
      report.failures.push_back({url, "cannot create " + dest_dir.string() + ": " + ec.message()});
    }
    return report;
  }

  for (const std::string& url : urls) {
    SplitUrl parts;
    try {
      parts = split_url(url);
    } catch (const std::invalid_argument& e) {
      report.failures.push_back({url, e.what()});
      continue;
    }
    const auto target = dest_dir / file_name_for(url);
    auto temp = target;
    temp += ".part";

    httplib::Client client(parts.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(options.timeout).count());
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(options.timeout).count());
    if (options.bearer_token && !options.bearer_token->empty()) {
      client.set_bearer_token_auth(*options.bearer_token);
    }

    if (std::filesystem::is_regular_file(target, ec)) {
      const auto local = std::filesystem::file_size(target, ec);
      const auto remote = remote_size(client, parts.path);
      if (!ec && remote && *remote == local) {
        report.skipped.push_back(target);
        continue;
      }
    }

    Attempt attempt;
    auto backoff = options.initial_backoff;
    for (int tries = 0; tries <= options.max_retries; ++tries) {
      if (tries > 0) {
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
      attempt = download_once(client, parts.path, temp);
      if (attempt.ok || !attempt.retry) {
        break;
      }
    }
    if (!attempt.ok) {
      std::filesystem::remove(temp, ec);
      report.failures.push_back({url, attempt.reason});
      continue;
    }
    std::filesystem::rename(temp, target, ec);
    if (ec) {
      const std::string reason = "cannot move download into place: " + ec.message();
      std::filesystem::remove(temp, ec);
      report.failures.push_back({url, reason});
      continue;
    }
    report.downloaded.push_back(target);
  }
  return report;
}

}  // namespace tcrain::tools
