#include "tcrain/grid_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcrain/errors.hpp"
#include "tcrain/format.hpp"

namespace tcrain {
namespace {

// Splits on '\n', dropping a trailing '\r'. Line numbers are 1-based.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) {
      return false;
    }
    const auto end = text_.find('\n', pos_);
    const auto stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    pos_ = stop + 1;
    ++number_;
    return true;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

template <typename Fn>
void for_each_token(std::string_view line, Fn&& fn) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i > start) {
      fn(line.substr(start, i - start));
    }
  }
}

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  for_each_token(line, [&](std::string_view t) { out.push_back(t); });
  return out;
}

bool starts_with_letter(std::string_view token) {
  return !token.empty() && std::isalpha(static_cast<unsigned char>(token.front())) != 0 &&
         !parse_double(token).has_value();
}

struct HeaderFields {
  std::optional<long long> ncols, nrows, precision;
  std::optional<double> xll, yll, cellsize, nodata;
  std::optional<Projection> projection;
};

void parse_header_line(const std::vector<std::string_view>& tokens, std::size_t line, HeaderFields& fields) {
  const std::string key = to_upper(tokens[0]);
  if (tokens.size() != 2) {
    throw ParseError("malformed header line for key '" + std::string(tokens[0]) + "'", line);
  }
  const std::string_view value = tokens[1];

  const auto integer = [&](std::optional<long long>& slot) {
    const auto parsed = parse_integer(value);
    if (!parsed || *parsed <= 0) {
      throw ParseError("invalid value '" + std::string(value) + "' for " + key, line);
    }
    slot = parsed;
  };
  const auto real = [&](std::optional<double>& slot) {
    const auto parsed = parse_double(value);
    if (!parsed || !std::isfinite(*parsed)) {
      throw ParseError("invalid value '" + std::string(value) + "' for " + key, line);
    }
    slot = parsed;
  };

  if (key == "NCOLS") {
    integer(fields.ncols);
  } else if (key == "NROWS") {
    integer(fields.nrows);
  } else if (key == "XLLCORNER") {
    real(fields.xll);
  } else if (key == "YLLCORNER") {
    real(fields.yll);
  } else if (key == "CELLSIZE") {
    real(fields.cellsize);
  } else if (key == "NODATA_VALUE") {
    real(fields.nodata);
  } else if (key == "PRECISION") {
    integer(fields.precision);
    if (*fields.precision > 17) {
      throw ParseError("PRECISION must be at most 17", line);
    }
  } else if (key == "PROJECTION") {
    const std::string name = to_upper(value);
    if (name == "GEOGRAPHIC") {
      fields.projection = Projection::Geographic;
    } else if (name == "SINUSOIDAL") {
      fields.projection = Projection::Sinusoidal;
    } else {
      throw ParseError("unsupported projection '" + std::string(value) + "'", line);
    }
  } else {
    throw ParseError("malformed header key '" + std::string(tokens[0]) + "'", line);
  }
}

}  // namespace

Grid read_ascii_grid(std::string_view text) {
  LineReader reader(text);
  HeaderFields fields;
  std::string_view line;
  bool have_line = false;

  while (reader.next(line)) {
    const auto tokens = tokens_of(line);
    if (tokens.empty()) {
      continue;
    }
    if (!starts_with_letter(tokens[0])) {
      have_line = true;
      break;
    }
    parse_header_line(tokens, reader.number(), fields);
  }

  const std::size_t data_line = have_line ? reader.number() : reader.number() + 1;
  const auto require = [&](bool present, const char* key) {
    if (!present) {
      throw ParseError(std::string("missing header key ") + key, data_line);
    }
  };
  require(fields.ncols.has_value(), "NCOLS");
  require(fields.nrows.has_value(), "NROWS");
  require(fields.xll.has_value(), "XLLCORNER");
  require(fields.yll.has_value(), "YLLCORNER");
  require(fields.cellsize.has_value(), "CELLSIZE");

  GridHeader header;
  header.ncols = static_cast<std::size_t>(*fields.ncols);
  header.nrows = static_cast<std::size_t>(*fields.nrows);
  header.xll = *fields.xll;
  header.yll = *fields.yll;
  header.cellsize = *fields.cellsize;
  header.nodata = fields.nodata.value_or(kDefaultNodata);
  header.projection = fields.projection.value_or(Projection::Geographic);
  try {
    header.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid header: ") + e.what(), data_line);
  }

  std::vector<double> values;
  values.reserve(header.size());
  std::size_t rows_read = 0;

  const auto consume_row = [&](std::string_view row_text, std::size_t line_number) {
    if (rows_read == header.nrows) {
      throw ParseError("value count mismatch: more than " + std::to_string(header.nrows) + " rows", line_number);
    }
    std::size_t count = 0;
    for_each_token(row_text, [&](std::string_view token) {
      ++count;
      if (count > header.ncols) {
        return;
      }
      const auto v = parse_double(token);
      if (!v || !std::isfinite(*v)) {
        throw ParseError("non-numeric value '" + std::string(token) + "'", line_number);
      }
      if (*v != header.nodata && *v < 0.0) {
        throw ParseError("negative precipitation value '" + std::string(token) + "'", line_number);
      }
      values.push_back(*v);
    });
    if (count != header.ncols) {
      throw ParseError("row length mismatch", line_number);
    }
    ++rows_read;
  };

  if (have_line) {
    consume_row(line, reader.number());
    while (reader.next(line)) {
      if (trim(line).empty()) {
        continue;
      }
      consume_row(line, reader.number());
    }
  }
  if (rows_read != header.nrows) {
    throw ParseError("value count mismatch: expected " + std::to_string(header.nrows) + " rows, found " +
                         std::to_string(rows_read),
                     reader.number() + 1);
  }

  Grid grid(header, std::move(values));
  grid.set_precision(static_cast<int>(fields.precision.value_or(kDefaultPrecision)));
  return grid;
}

std::string write_ascii_grid(const Grid& grid) {
  const GridHeader& h = grid.header();
  std::string out;
  out.reserve(128 + h.size() * (static_cast<std::size_t>(grid.precision()) + 3));
  out += "NCOLS " + std::to_string(h.ncols) + "\n";
  out += "NROWS " + std::to_string(h.nrows) + "\n";
  out += "XLLCORNER " + format_shortest(h.xll) + "\n";
  out += "YLLCORNER " + format_shortest(h.yll) + "\n";
  out += "CELLSIZE " + format_shortest(h.cellsize) + "\n";
  out += "NODATA_VALUE " + format_shortest(h.nodata) + "\n";
  out += "PRECISION " + std::to_string(grid.precision()) + "\n";
  if (h.projection == Projection::Sinusoidal) {
    out += "PROJECTION SINUSOIDAL\n";
  }
  const std::string nodata_text = format_shortest(h.nodata);
  for (std::size_t r = 0; r < h.nrows; ++r) {
    for (std::size_t c = 0; c < h.ncols; ++c) {
      if (c > 0) {
        out += ' ';
      }
      const double v = grid(r, c);
      out += grid.is_nodata(v) ? nodata_text : format_significant(v, grid.precision());
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

Grid read_ascii_grid_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return read_ascii_grid(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_ascii_grid_file(const std::filesystem::path& path, const Grid& grid) {
  write_text_file(path, write_ascii_grid(grid));
}

Grid accumulate_daily(std::span<const Grid> rate_grids, double step_hours) {
  if (rate_grids.empty()) {
    throw std::invalid_argument("accumulate_daily needs at least one rate grid");
  }
  if (!(step_hours > 0.0) || !std::isfinite(step_hours)) {
    throw std::invalid_argument("step_hours must be positive");
  }
  const GridHeader& header = rate_grids.front().header();
  for (std::size_t i = 1; i < rate_grids.size(); ++i) {
    if (!rate_grids[i].header().same_georeference(header)) {
      throw GeoreferenceMismatch("rate grid " + std::to_string(i) + " does not match the georeferencing of grid 0");
    }
  }

  Grid total(header, header.nodata);
  total.set_precision(rate_grids.front().precision());
  std::vector<double> terms;
  terms.reserve(rate_grids.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    terms.clear();
    for (const Grid& g : rate_grids) {
      const double rate = g.values()[i];
      if (!g.is_nodata(rate)) {
        terms.push_back(rate * step_hours);
      }
    }
    if (terms.empty()) {
      continue;
    }
    // Summing in sorted order keeps the total independent of input order.
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double t : terms) {
      sum += t;
    }
    total.values()[i] = sum;
  }
  return total;
}

}  // namespace tcrain
