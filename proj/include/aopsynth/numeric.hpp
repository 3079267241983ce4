/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file numeric.hpp
  \brief Arrival times, exact input weights and small rationals.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace aopsynth
{

/*! \brief Arrival time of an input (a natural number). */
using arrival_t = std::uint32_t;

/*! \brief Delay of a node or circuit; a sum of an arrival time and a gate count. */
using delay_t = std::uint64_t;

/*! \brief Exact non-negative integer weight, W = sum of 2^a over inputs. */
using weight = boost::multiprecision::cpp_int;

/*! \brief Weight 2^a of a single input with arrival time `a`. */
inline weight weight_of( arrival_t a )
{
  weight w = 1;
  w <<= a;
  return w;
}

template<class Range>
weight total_weight( Range const& arrivals )
{
  weight w = 0;
  for ( auto a : arrivals )
  {
    w += weight_of( static_cast<arrival_t>( a ) );
  }
  return w;
}

/*! \brief Index of the most significant set bit; `w` must be positive. */
inline std::uint64_t floor_log2( weight const& w )
{
  return static_cast<std::uint64_t>( boost::multiprecision::msb( w ) );
}

/*! \brief Smallest `d` with `w <= 2^d`; `w` must be positive. */
inline std::uint64_t ceil_log2( weight const& w )
{
  if ( w <= 0 )
  {
    throw std::invalid_argument( "ceil_log2 of a non-positive weight" );
  }
  auto const hi = boost::multiprecision::msb( w );
  return boost::multiprecision::lsb( w ) == hi ? hi : hi + 1u;
}

/*! \brief Real-valued log2 of a positive weight, accurate for any magnitude. */
inline long double log2_real( weight const& w )
{
  auto const hi = floor_log2( w );
  auto const shift = hi > 62u ? hi - 62u : 0u;
  weight const top = w >> shift;
  return std::log2( static_cast<long double>( top.convert_to<std::uint64_t>() ) ) + static_cast<long double>( shift );
}

/*! \brief Decides `log2(d) * a <= b` for integers `d >= 2` and `a > 0`.
 *
 * Exact when `d` is a power of two. Otherwise both sides are irrational
 * multiples apart, so they are never equal; `a` and `b` are shifted by a
 * common power of two into 64 significant bits and compared in long double.
 * For fixed `d` and `b` the result is monotone in `a`.
 */
inline bool log2_times_le( std::uint64_t d, weight const& a, weight const& b )
{
  if ( b <= 0 )
  {
    return false;
  }
  if ( ( d & ( d - 1u ) ) == 0u )
  {
    auto const exponent = static_cast<unsigned>( std::countr_zero( d ) );
    return a * exponent <= b;
  }
  auto const msb_a = floor_log2( a );
  auto const msb_b = floor_log2( b );
  // log2(d) > 1 here, so a > 2b already decides the comparison
  if ( msb_a > msb_b + 1u )
  {
    return false;
  }
  auto const shift = msb_b > 62u ? msb_b - 62u : 0u;
  weight const a_top = a >> shift;
  weight const b_top = b >> shift;
  auto const la = static_cast<long double>( a_top.convert_to<std::uint64_t>() );
  auto const lb = static_cast<long double>( b_top.convert_to<std::uint64_t>() );
  return std::log2( static_cast<long double>( d ) ) * la <= lb;
}

/*! \brief Non-negative rational number with 64-bit numerator and denominator. */
struct rational
{
  std::uint64_t num{ 0 };
  std::uint64_t den{ 1 };

  constexpr rational() = default;
  constexpr rational( std::uint64_t n, std::uint64_t d = 1 ) : num( n ), den( d )
  {
    if ( d == 0 )
    {
      throw std::invalid_argument( "rational with zero denominator" );
    }
    auto const g = std::gcd( num, den );
    if ( g > 1 )
    {
      num /= g;
      den /= g;
    }
  }

  long double value() const { return static_cast<long double>( num ) / static_cast<long double>( den ); }

  bool is_integer() const { return den == 1; }

  friend bool operator==( rational const& x, rational const& y ) { return x.num == y.num && x.den == y.den; }

  friend std::strong_ordering operator<=>( rational const& x, rational const& y )
  {
    using u128 = unsigned __int128;
    return static_cast<u128>( x.num ) * y.den <=> static_cast<u128>( y.num ) * x.den;
  }

  friend rational operator*( rational const& x, rational const& y )
  {
    using u128 = unsigned __int128;
    u128 n = static_cast<u128>( x.num ) * y.num;
    u128 d = static_cast<u128>( x.den ) * y.den;
    for ( u128 a = n, b = d; ; )
    {
      if ( b == 0 )
      {
        n /= a;
        d /= a;
        break;
      }
      a %= b;
      std::swap( a, b );
    }
    if ( n > std::numeric_limits<std::uint64_t>::max() || d > std::numeric_limits<std::uint64_t>::max() )
    {
      throw std::overflow_error( "rational product overflows 64 bits" );
    }
    return rational{ static_cast<std::uint64_t>( n ), static_cast<std::uint64_t>( d ) };
  }

  /*! \brief Smallest integer not below this value. */
  std::uint64_t ceil() const { return num / den + ( num % den != 0 ? 1u : 0u ); }

  std::string to_string() const
  {
    return den == 1 ? std::to_string( num ) : std::to_string( num ) + "/" + std::to_string( den );
  }
};

/*! \brief Parses `"7"`, `"2.75"` or `"11/4"` into an exact rational.
 *
 * Throws std::invalid_argument on malformed or negative input.
 */
inline rational parse_rational( std::string_view text )
{
  auto const fail = [&]() -> rational {
    throw std::invalid_argument( "not a non-negative rational: '" + std::string( text ) + "'" );
  };
  auto const parse_digits = [&]( std::string_view digits, std::uint64_t& value ) {
    if ( digits.empty() )
    {
      fail();
    }
    value = 0;
    for ( char c : digits )
    {
      if ( c < '0' || c > '9' )
      {
        fail();
      }
      if ( value > ( std::numeric_limits<std::uint64_t>::max() - 9u ) / 10u )
      {
        throw std::overflow_error( "rational literal too large: '" + std::string( text ) + "'" );
      }
      value = value * 10u + static_cast<std::uint64_t>( c - '0' );
    }
  };

  if ( auto slash = text.find( '/' ); slash != std::string_view::npos )
  {
    std::uint64_t n, d;
    parse_digits( text.substr( 0, slash ), n );
    parse_digits( text.substr( slash + 1 ), d );
    if ( d == 0 )
    {
      fail();
    }
    return rational{ n, d };
  }
  if ( auto dot = text.find( '.' ); dot != std::string_view::npos )
  {
    auto const frac = text.substr( dot + 1 );
    if ( frac.size() > 18u )
    {
      fail();
    }
    std::uint64_t whole = 0, part = 0;
    if ( dot > 0 )
    {
      parse_digits( text.substr( 0, dot ), whole );
    }
    if ( !frac.empty() )
    {
      parse_digits( frac, part );
    }
    else if ( dot == 0 )
    {
      fail();
    }
    std::uint64_t scale = 1;
    for ( std::size_t i = 0; i < frac.size(); ++i )
    {
      scale *= 10u;
    }
    using u128 = unsigned __int128;
    u128 const n = static_cast<u128>( whole ) * scale + part;
    if ( n > std::numeric_limits<std::uint64_t>::max() )
    {
      throw std::overflow_error( "rational literal too large: '" + std::string( text ) + "'" );
    }
    return rational{ static_cast<std::uint64_t>( n ), scale };
  }
  std::uint64_t n;
  parse_digits( text, n );
  return rational{ n };
}

/*! \brief Rounds a rational arrival time up to the next natural number.
 *
 * Rounding all arrival times up changes the delay of any circuit by less than one.
 */
inline arrival_t ceil_arrival( rational const& r )
{
  auto const c = r.ceil();
  if ( c > std::numeric_limits<arrival_t>::max() )
  {
    throw std::out_of_range( "arrival time exceeds the supported range" );
  }
  return static_cast<arrival_t>( c );
}

} // namespace aopsynth
