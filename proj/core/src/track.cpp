#include "tcrain/track.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcrain/errors.hpp"
#include "tcrain/format.hpp"
#include "tcrain/grid_io.hpp"

namespace tcrain {
namespace {

int digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) {
    throw std::invalid_argument("truncated timestamp");
  }
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("expected digit");
    }
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw std::invalid_argument(std::string("expected '") + c + "'");
  }
}

std::chrono::sys_days civil_day(int y, int m, int d) {
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date");
  }
  return std::chrono::sys_days{ymd};
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto field = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = field.substr(1, field.size() - 2);
    }
    fields.push_back(field);
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

}  // namespace

UtcTime parse_date(std::string_view text) {
  text = trim(text);
  try {
    if (text.size() != 10) {
      throw std::invalid_argument("expected YYYY-MM-DD");
    }
    const int y = digits(text, 0, 4);
    expect(text, 4, '-');
    const int m = digits(text, 5, 2);
    expect(text, 7, '-');
    const int d = digits(text, 8, 2);
    return std::chrono::sys_seconds{civil_day(y, m, d)};
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("unparseable date '" + std::string(text) + "': " + e.what());
  }
}

UtcTime parse_utc_timestamp(std::string_view text) {
  text = trim(text);
  try {
    const int y = digits(text, 0, 4);
    expect(text, 4, '-');
    const int mo = digits(text, 5, 2);
    expect(text, 7, '-');
    const int d = digits(text, 8, 2);
    if (text.size() <= 10 || (text[10] != 'T' && text[10] != 't' && text[10] != ' ')) {
      throw std::invalid_argument("expected 'T'");
    }
    const int h = digits(text, 11, 2);
    expect(text, 13, ':');
    const int mi = digits(text, 14, 2);
    std::size_t pos = 16;
    int s = 0;
    if (pos < text.size() && text[pos] == ':') {
      s = digits(text, pos + 1, 2);
      pos += 3;
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t frac_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
        if (pos == frac_start) {
          throw std::invalid_argument("empty fractional seconds");
        }
      }
    }
    if (h > 23 || mi > 59 || s > 59) {
      throw std::invalid_argument("time of day out of range");
    }
    if (pos >= text.size()) {
      throw std::invalid_argument("missing UTC offset");
    }
    int offset_minutes = 0;
    if (text[pos] == 'Z' || text[pos] == 'z') {
      ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
      const int sign = text[pos] == '+' ? 1 : -1;
      const int oh = digits(text, pos + 1, 2);
      expect(text, pos + 3, ':');
      const int om = digits(text, pos + 4, 2);
      if (oh > 23 || om > 59) {
        throw std::invalid_argument("offset out of range");
      }
      offset_minutes = sign * (oh * 60 + om);
      pos += 6;
    } else {
      throw std::invalid_argument("bad UTC offset");
    }
    if (pos != text.size()) {
      throw std::invalid_argument("trailing characters");
    }
    using namespace std::chrono;
    return sys_seconds{civil_day(y, mo, d)} + hours(h) + minutes(mi) + seconds(s) - minutes(offset_minutes);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("unparseable timestamp '" + std::string(text) + "': " + e.what());
  }
}

std::string format_utc_timestamp(UtcTime time) {
  using namespace std::chrono;
  const auto day = floor<days>(time);
  const year_month_day ymd{day};
  const hh_mm_ss hms{time - day};
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buffer;
}

Track read_track_csv(std::string_view text) {
  Track track;
  bool header_seen = false;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const auto stop = end == std::string_view::npos ? text.size() : end;
    std::string_view line = text.substr(pos, stop - pos);
    pos = stop + 1;
    ++line_number;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split_csv(line);
    if (!header_seen) {
      if (to_upper(fields[0]) != "TIMESTAMP") {
        throw ParseError("missing header row 'timestamp,lat,lon,label'", line_number);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError("expected 3 or 4 columns, found " + std::to_string(fields.size()), line_number);
    }
    TrackPoint point;
    try {
      point.time = parse_utc_timestamp(fields[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_number);
    }
    const auto lat = parse_double(fields[1]);
    const auto lon = parse_double(fields[2]);
    if (!lat || !lon) {
      throw ParseError("non-numeric coordinate", line_number);
    }
    if (!(*lat >= -90.0 && *lat <= 90.0) || !(*lon >= -180.0 && *lon <= 180.0)) {
      throw ParseError("coordinate out of range (" + std::string(fields[1]) + ", " + std::string(fields[2]) + ")",
                       line_number);
    }
    point.lat = *lat;
    point.lon = *lon;
    if (fields.size() == 4) {
      point.label = std::string(fields[3]);
    }
    if (!track.points.empty() && point.time <= track.points.back().time) {
      throw ParseError("timestamp " + std::string(fields[0]) + " not after the previous row", line_number);
    }
    track.points.push_back(std::move(point));
  }
  if (track.points.empty()) {
    throw std::invalid_argument("no track points");
  }
  return track;
}

Track read_track_csv_file(const std::filesystem::path& path) {
  try {
    return read_track_csv(read_text_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::optional<TrackPoint> track_fix_at(const Track& track, UtcTime when, std::chrono::seconds tolerance) {
  const auto& pts = track.points;
  if (pts.empty()) {
    return std::nullopt;
  }
  const auto it = std::lower_bound(pts.begin(), pts.end(), when,
                                   [](const TrackPoint& p, UtcTime t) { return p.time < t; });
  if (it != pts.end() && it->time == when) {
    return *it;
  }
  if (it == pts.begin()) {
    return (it->time - when) <= tolerance ? std::optional<TrackPoint>(*it) : std::nullopt;
  }
  if (it == pts.end()) {
    const auto& last = pts.back();
    return (when - last.time) <= tolerance ? std::optional<TrackPoint>(last) : std::nullopt;
  }
  const TrackPoint& before = *(it - 1);
  const TrackPoint& after = *it;
  const double span = static_cast<double>((after.time - before.time).count());
  const double f = static_cast<double>((when - before.time).count()) / span;
  TrackPoint out;
  out.time = when;
  out.lat = before.lat + f * (after.lat - before.lat);
  out.lon = before.lon + f * (after.lon - before.lon);
  out.label = f < 0.5 ? before.label : after.label;
  return out;
}

}  // namespace tcrain
