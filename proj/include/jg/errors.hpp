#pragma once

#include <stdexcept>
#include <string>

namespace jg {

enum class errc {
    descriptor_mismatch,
    not_self_adjoint,
    not_positive,
    not_a_projection,
    angle_out_of_range,
    too_far_apart,
    missing_spare_room,
    zero_projection,
    not_orthogonal,
    not_dominated,
    precondition_violation,
    unsupported_factor,
    trace_unreachable,
    inversion_ill_conditioned,
    dimension_too_small,
    parse_error,
    unknown_suite,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace jg
