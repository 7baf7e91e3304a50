#pragma once

// Sequence DSL:
//   pow:P  exp:R  powlog:P,Q  finite:[a,b,...]  explicit:[a,b,...];tail=SEQ
//   scale:C;SEQ  amp:M;SEQ  sub:K;SEQ  prod(SEQ,SEQ)
// Rationals are "p/q", integers, or decimals. Whitespace is ignored everywhere.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "idealkit/seqspace.hpp"

namespace idealkit {

namespace detail {

class SeqParser {
 public:
  explicit SeqParser(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
      chars_.push_back(text[i]);
      offsets_.push_back(i);
    }
    end_offset_ = text.size();
  }

  SequenceExpr parse_all() {
    SequenceExpr s = parse_seq();
    if (pos_ != chars_.size()) fail("unexpected trailing input");
    return s;
  }

  SequenceExpr parse_seq() {
    if (accept("prod(")) {
      SequenceExpr l = parse_seq();
      expect(",");
      SequenceExpr r = parse_seq();
      expect(")");
      return SequenceExpr::product(l, r);
    }
    if (accept("powlog:")) {
      Rational p = parse_rat();
      expect(",");
      Rational q = parse_rat();
      return SequenceExpr::power_log(p, q);
    }
    if (accept("pow:")) return SequenceExpr::power(parse_rat());
    if (accept("exp:")) return SequenceExpr::geometric(parse_rat());
    if (accept("finite:")) return SequenceExpr::finite(parse_list());
    if (accept("explicit:")) {
      auto prefix = parse_list();
      expect(";");
      expect("tail=");
      return SequenceExpr::explicit_prefix(std::move(prefix), parse_seq());
    }
    if (accept("scale:")) {
      Rational c = parse_rat();
      expect(";");
      return SequenceExpr::scaled(c, parse_seq());
    }
    if (accept("amp:")) {
      auto m = parse_count();
      expect(";");
      return SequenceExpr::ampliation(m, parse_seq());
    }
    if (accept("sub:")) {
      auto k = parse_count();
      expect(";");
      return SequenceExpr::subsampled(k, parse_seq());
    }
    fail("expected a sequence (pow:, exp:, powlog:, finite:, explicit:, scale:, amp:, sub:, prod()");
  }

  std::size_t position() const { return pos_; }
  bool at_end() const { return pos_ >= chars_.size(); }
  char peek() const { return at_end() ? '\0' : chars_[pos_]; }
  bool accept(std::string_view lit) {
    if (chars_.size() - pos_ < lit.size()) return false;
    for (std::size_t i = 0; i < lit.size(); ++i)
      if (chars_[pos_ + i] != lit[i]) return false;
    pos_ += lit.size();
    return true;
  }
  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_ < offsets_.size() ? offsets_[pos_] : end_offset_);
  }

 private:
  Rational parse_rat() {
    std::size_t start = pos_;
    std::string tok;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '.' ||
          ((c == '-' || c == '+') && tok.empty())) {
        tok.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    if (tok.empty()) fail("expected a rational number");
    try {
      return parse_rational(tok);
    } catch (const InputError& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  std::uint64_t parse_count() {
    std::size_t start = pos_;
    Rational q = parse_rat();
    if (!is_integer(q) || sgn(q) <= 0 || !q.get_num().fits_ulong_p()) {
      pos_ = start;
      fail("expected a positive integer");
    }
    return q.get_num().get_ui();
  }

  std::vector<Rational> parse_list() {
    expect("[");
    std::vector<Rational> out;
    if (accept("]")) return out;
    do {
      out.push_back(parse_rat());
    } while (accept(","));
    expect("]");
    return out;
  }

  std::vector<char> chars_;
  std::vector<std::size_t> offsets_;
  std::size_t end_offset_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Syntax only; constraint checking is validate()'s job.
inline SequenceExpr parse_seq_syntax(std::string_view text) { return detail::SeqParser(text).parse_all(); }

/// Parses and validates. Throws ParseError on syntax, InputError on constraint violations.
inline SequenceExpr parse_seq_dsl(std::string_view text) {
  SequenceExpr s = parse_seq_syntax(text);
  require_valid(s);
  return s;
}

}  // namespace idealkit
