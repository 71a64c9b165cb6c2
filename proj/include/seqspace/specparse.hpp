#ifndef SEQSPACE_SPECPARSE_HPP
#define SEQSPACE_SPECPARSE_HPP

#include <optional>
#include <string>

#include "seqspace/core.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/triangles.hpp"

namespace seqspace::specs {

/// Error in a kind:args spec string; carries the offending spec text.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& spec, const std::string& what)
      : std::runtime_error("bad spec '" + spec + "': " + what) {}
};

/// Lambda specs: arithmetic:a,b | log | squares | values:v0,v1,... |
/// expr:<expression in k>. The parsed sequence is certified strictly
/// increasing and positive on a prefix; violations surface as SpecError.
LambdaSeq parse_lambda_spec(const std::string& text, Index check_prefix = 1024);

/// Sequence specs: e | zero | unit:j | values:... | expr:<expression in k>
/// | witness:<name> (thm4 needs the band parameters).
RealSeq parse_sequence_spec(const std::string& text,
                            std::optional<BandParams> band = std::nullopt);

/// Triangle specs: band:r,s,t | band-inverse:r,s,t | lambda-mean:<lambda>
/// | lambda-mean-inverse:<lambda> | what:r,s,t;<lambda> | identity |
/// cesaro | summation | euler:r | delta:m | riesz:<seq> |
/// factorable:<seq>;<seq> | au:r;<seq>.
Triangle parse_triangle_spec(const std::string& text);

/// Infinite-matrix specs: any triangle spec, plus diagonal:<expr in n> |
/// rows:<expr in n,k> | file:<csv path> | zero. An optional "|decay=rho"
/// suffix sets the row-decay hint.
matclass::InfiniteMatrix parse_matrix_spec(const std::string& text);

std::string format_double(double v);  // shortest round-trip decimal form

}  // namespace seqspace::specs

#endif  // SEQSPACE_SPECPARSE_HPP
