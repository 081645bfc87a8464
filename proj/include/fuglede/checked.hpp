#pragma once

#include "fuglede/error.hpp"

#include <concepts>

namespace fuglede {

template <std::integral T>
T checked_add(T a, T b)
{
    T out{};
    if (__builtin_add_overflow(a, b, &out))
        throw ArithmeticOverflow("integer overflow in addition");
    return out;
}

template <std::integral T>
T checked_sub(T a, T b)
{
    T out{};
    if (__builtin_sub_overflow(a, b, &out))
        throw ArithmeticOverflow("integer overflow in subtraction");
    return out;
}

template <std::integral T>
T checked_mul(T a, T b)
{
    T out{};
    if (__builtin_mul_overflow(a, b, &out))
        throw ArithmeticOverflow("integer overflow in multiplication");
    return out;
}

} // namespace fuglede
