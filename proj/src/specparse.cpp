#include "seqspace/specparse.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <vector>

#include "seqspace/expr.hpp"
#include "seqspace/spaces.hpp"

namespace seqspace::specs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_numbers(const std::string& spec, const std::string& args) {
  std::vector<double> out;
  for (const std::string& part : split(args, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw SpecError(spec, "malformed number '" + part + "'");
    }
  }
  return out;
}

std::pair<std::string, std::string> split_kind(const std::string& text) {
  auto pos = text.find(':');
  if (pos == std::string::npos) return {text, ""};
  return {text.substr(0, pos), text.substr(pos + 1)};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

LambdaSeq parse_lambda_spec(const std::string& text, Index check_prefix) {
  auto [kind, args] = split_kind(text);
  LambdaSeq::Fn fn;
  try {
    if (kind == "arithmetic") {
      auto nums = parse_numbers(text, args);
      if (nums.size() != 2) throw SpecError(text, "arithmetic takes two parameters a,b");
      const double a = nums[0], b = nums[1];
      fn = [a, b](Index k) { return a * static_cast<double>(k) + b; };
    } else if (kind == "log") {
      fn = [](Index k) { return std::log(static_cast<double>(k) + 2.0); };
    } else if (kind == "squares") {
      fn = [](Index k) {
        double v = static_cast<double>(k) + 1.0;
        return v * v;
      };
    } else if (kind == "values") {
      auto vals = parse_numbers(text, args);
      if (vals.size() < 2) throw SpecError(text, "values needs at least two entries");
      // Beyond the list the sequence continues with the last increment, so
      // it still tends to infinity.
      const double last = vals.back();
      const double step = vals[vals.size() - 1] - vals[vals.size() - 2];
      const Index len = static_cast<Index>(vals.size());
      auto data = std::make_shared<std::vector<double>>(std::move(vals));
      fn = [data, last, step, len](Index k) {
        if (k < len) return (*data)[static_cast<size_t>(k)];
        return last + step * static_cast<double>(k - len + 1);
      };
    } else if (kind == "expr") {
      expr::Expr e = expr::parse(args);
      fn = [e](Index k) { return e.eval(static_cast<double>(k)); };
    } else {
      throw SpecError(text, "unknown lambda kind '" + kind + "'");
    }
    LambdaSeq lam(fn, 1 << 20, text);
    Verdict v = validate_lambda(lam, check_prefix);
    if (v.kind == VerdictKind::NonMember)
      throw SpecError(text, "not strictly increasing and positive on the checked prefix");
    return lam;
  } catch (const expr::ParseError& e) {
    throw SpecError(text, e.what());
  } catch (const std::invalid_argument& e) {
    throw SpecError(text, e.what());
  }
}

RealSeq parse_sequence_spec(const std::string& text, std::optional<BandParams> band) {
  auto [kind, args] = split_kind(text);
  try {
    if (kind == "e" || kind == "ones") return ones_seq();
    if (kind == "zero") return zero_seq();
    if (kind == "unit") {
      auto nums = parse_numbers(text, args);
      if (nums.size() != 1) throw SpecError(text, "unit takes one index");
      return unit_seq(static_cast<Index>(nums[0]));
    }
    if (kind == "values") return RealSeq::from_values(parse_numbers(text, args), text);
    if (kind == "expr") {
      expr::Expr e = expr::parse(args);
      return RealSeq::closed_form([e](Index k) { return e.eval(static_cast<double>(k)); }, text);
    }
    if (kind == "witness") {
      if (args == "thm4" && !band)
        throw SpecError(text, "witness thm4 needs band parameters in context");
      return witness(args, band.value_or(BandParams(1.0, 0.0, 0.0)));
    }
    throw SpecError(text, "unknown sequence kind '" + kind + "'");
  } catch (const expr::ParseError& e) {
    throw SpecError(text, e.what());
  }
}

Triangle parse_triangle_spec(const std::string& text) {
  auto [kind, args] = split_kind(text);
  auto band_of = [&](const std::string& a) {
    auto nums = parse_numbers(text, a);
    if (nums.size() != 3) throw SpecError(text, "band parameters are r,s,t");
    return BandParams(nums[0], nums[1], nums[2]);
  };
  try {
    if (kind == "band") return triple_band(band_of(args));
    if (kind == "band-inverse") return band_inverse(band_of(args));
    if (kind == "lambda-mean") return lambda_mean(parse_lambda_spec(args));
    if (kind == "lambda-mean-inverse") return lambda_mean_inverse(parse_lambda_spec(args));
    if (kind == "what") {
      auto parts = split(args, ';');
      if (parts.size() != 2) throw SpecError(text, "what takes r,s,t;<lambda spec>");
      return what_matrix(band_of(parts[0]), parse_lambda_spec(parts[1]));
    }
    if (kind == "identity") return identity_triangle();
    if (kind == "cesaro") return cesaro_mean();
    if (kind == "summation") return summation_matrix();
    if (kind == "euler") {
      auto nums = parse_numbers(text, args);
      if (nums.size() != 1) throw SpecError(text, "euler takes one order parameter");
      return euler_mean(nums[0]);
    }
    if (kind == "delta") {
      auto nums = parse_numbers(text, args);
      if (nums.size() != 1) throw SpecError(text, "delta takes one order parameter");
      return difference_matrix(static_cast<int>(nums[0]));
    }
    if (kind == "riesz") return riesz_mean(parse_sequence_spec(args));
    if (kind == "factorable") {
      auto parts = split(args, ';');
      if (parts.size() != 2) throw SpecError(text, "factorable takes <u spec>;<v spec>");
      return factorable_matrix(parse_sequence_spec(parts[0]), parse_sequence_spec(parts[1]));
    }
    if (kind == "au") {
      auto parts = split(args, ';');
      if (parts.size() != 2) throw SpecError(text, "au takes r;<u spec>");
      auto nums = parse_numbers(text, parts[0]);
      if (nums.size() != 1) throw SpecError(text, "au takes one scalar before ';'");
      return au_matrix(nums[0], parse_sequence_spec(parts[1]));
    }
    throw SpecError(text, "unknown matrix kind '" + kind + "'");
  } catch (const std::invalid_argument& e) {
    throw SpecError(text, e.what());
  }
}

matclass::InfiniteMatrix parse_matrix_spec(const std::string& text) {
  std::string body = text;
  std::optional<double> decay;
  if (auto pos = text.rfind("|decay="); pos != std::string::npos) {
    body = text.substr(0, pos);
    try {
      decay = std::stod(text.substr(pos + 7));
    } catch (const std::exception&) {
      throw SpecError(text, "malformed decay hint");
    }
  }
  auto [kind, args] = split_kind(body);
  try {
    if (kind == "zero") return matclass::InfiniteMatrix();
    if (kind == "diagonal") {
      expr::Expr e = expr::parse(args);
      return matclass::InfiniteMatrix(
          [e](Index n, Index k) {
            return n == k ? e.eval(static_cast<double>(k), static_cast<double>(n)) : 0.0;
          },
          body, decay);
    }
    if (kind == "rows") {
      expr::Expr e = expr::parse(args);
      return matclass::InfiniteMatrix(
          [e](Index n, Index k) {
            return e.eval(static_cast<double>(k), static_cast<double>(n));
          },
          body, decay);
    }
    if (kind == "file") {
      std::ifstream in(args);
      if (!in) throw SpecError(text, "cannot open file '" + args + "'");
      auto rows = std::make_shared<std::vector<std::vector<double>>>();
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows->push_back(parse_numbers(text, line));
      }
      return matclass::InfiniteMatrix(
          [rows](Index n, Index k) {
            if (n >= static_cast<Index>(rows->size())) return 0.0;
            const auto& row = (*rows)[static_cast<size_t>(n)];
            return k < static_cast<Index>(row.size()) ? row[static_cast<size_t>(k)] : 0.0;
          },
          body, decay);
    }
    matclass::InfiniteMatrix m = matclass::from_triangle(parse_triangle_spec(body));
    if (decay) return matclass::InfiniteMatrix([m](Index n, Index k) { return m.at(n, k); },
                                               m.label(), decay);
    return m;
  } catch (const expr::ParseError& e) {
    throw SpecError(text, e.what());
  }
}

}  // namespace seqspace::specs
