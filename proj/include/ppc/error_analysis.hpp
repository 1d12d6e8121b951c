/*!
  \file error_analysis.hpp
  \brief Exact PE / ME / MAE of preprocessed blocks: exhaustive oracle,
         closed forms for down-sampling, and the published expressions
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"
#include "sparsity.hpp"
#include "truth_table.hpp"

namespace ppc
{

using rational = boost::rational<std::int64_t>;

inline double to_double( rational const& r ) { return boost::rational_cast<double>( r ); }

inline std::string to_string( rational const& r )
{
  return r.denominator() == 1 ? std::to_string( r.numerator() )
                              : std::to_string( r.numerator() ) + "/" + std::to_string( r.denominator() );
}

/*! \brief Error statistics with e = precise - approximate. */
struct error_stats
{
  rational pe{ 0 };
  rational me{ 0 };
  rational mae{ 0 };
  std::uint64_t n_pairs{ 0u };

  bool operator==( error_stats const& o ) const { return pe == o.pe && me == o.me && mae == o.mae; }
};

namespace detail
{

using i128 = __int128;

inline i128 gcd128( i128 a, i128 b )
{
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while ( b != 0 )
  {
    auto const t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline rational make_rational( i128 num, i128 den )
{
  if ( den == 0 )
  {
    return rational( 0 );
  }
  auto const g = gcd128( num, den );
  if ( g > 1 )
  {
    num /= g;
    den /= g;
  }
  constexpr auto lim = static_cast<i128>( std::numeric_limits<std::int64_t>::max() );
  if ( num > lim || num < -lim || den > lim )
  {
    throw arithmetic_error( "error statistic does not fit a 64-bit rational" );
  }
  return rational( static_cast<std::int64_t>( num ), static_cast<std::int64_t>( den ) );
}

struct error_sums
{
  i128 weight{ 0 };
  i128 wrong{ 0 };
  i128 err{ 0 };
  i128 abs_err{ 0 };
  std::uint64_t pairs{ 0u };

  void merge( error_sums const& o )
  {
    weight += o.weight;
    wrong += o.wrong;
    err += o.err;
    abs_err += o.abs_err;
    pairs += o.pairs;
  }
};

} // namespace detail

/*! \brief Input distribution and scheduling options of the oracle. */
struct oracle_options
{
  std::optional<value_set> domain_a;     ///< restrict operand a (uniform over the set)
  std::optional<value_set> domain_b;
  std::optional<histogram> weights_a;    ///< weight operand a by histogram counts
  std::optional<histogram> weights_b;
  unsigned threads{ 1u };
};

/*! \brief Exhaustive evaluation of precise(a, b) - precise(chain_a(a), chain_b(b)). */
inline error_stats metrics_oracle( block_spec const& spec, preprocess_chain const& chain_a,
                                   preprocess_chain const& chain_b, oracle_options const& opts = {} )
{
  spec.validate();
  if ( spec.num_inputs() > max_enumeration_inputs )
  {
    throw capacity_error( "the error oracle is limited to " + std::to_string( max_enumeration_inputs ) + " input bits" );
  }
  chain_a.validate( spec.wl_a, spec.interp_a );
  chain_b.validate( spec.wl_b, spec.interp_b );
  if ( ( opts.weights_a && opts.weights_a->wl() != spec.wl_a ) || ( opts.weights_b && opts.weights_b->wl() != spec.wl_b ) )
  {
    throw parameter_error( "histogram word length does not match the operand" );
  }
  if ( ( opts.domain_a && opts.domain_a->wl() != spec.wl_a ) || ( opts.domain_b && opts.domain_b->wl() != spec.wl_b ) )
  {
    throw parameter_error( "domain word length does not match the operand" );
  }

  auto const as = opts.domain_a ? opts.domain_a->members() : value_set::full( spec.wl_a ).members();
  auto const bs = opts.domain_b ? opts.domain_b->members() : value_set::full( spec.wl_b ).members();

  std::vector<encoding> pa( as.size() ), pb( bs.size() );
  std::vector<std::uint64_t> wa( as.size(), 1u ), wb( bs.size(), 1u );
  for ( std::size_t i = 0; i < as.size(); ++i )
  {
    pa[i] = chain_apply( chain_a, as[i], spec.interp_a );
    if ( opts.weights_a )
    {
      wa[i] = opts.weights_a->counts()[as[i]];
    }
  }
  for ( std::size_t i = 0; i < bs.size(); ++i )
  {
    pb[i] = chain_apply( chain_b, bs[i], spec.interp_b );
    if ( opts.weights_b )
    {
      wb[i] = opts.weights_b->counts()[bs[i]];
    }
  }

  auto work = [&]( std::size_t lo, std::size_t hi ) {
    detail::error_sums s;
    for ( std::size_t i = lo; i < hi; ++i )
    {
      if ( wa[i] == 0u )
      {
        continue;
      }
      for ( std::size_t j = 0; j < bs.size(); ++j )
      {
        if ( wb[j] == 0u )
        {
          continue;
        }
        auto const w = static_cast<detail::i128>( wa[i] ) * wb[j];
        auto const e = spec.evaluate_value( as[i], bs[j] ) - spec.evaluate_value( pa[i], pb[j] );
        s.weight += w;
        s.pairs += 1u;
        if ( e != 0 )
        {
          s.wrong += w;
          s.err += w * e;
          s.abs_err += w * ( e < 0 ? -e : e );
        }
      }
    }
    return s;
  };

  detail::error_sums total;
  auto const threads = std::max( 1u, std::min<unsigned>( opts.threads, static_cast<unsigned>( as.size() ) ) );
  if ( threads == 1u )
  {
    total = work( 0u, as.size() );
  }
  else
  {
    std::vector<detail::error_sums> parts( threads );
    std::vector<std::thread> pool;
    auto const chunk = ( as.size() + threads - 1u ) / threads;
    for ( unsigned t = 0; t < threads; ++t )
    {
      auto const lo = std::min( as.size(), t * chunk ), hi = std::min( as.size(), lo + chunk );
      pool.emplace_back( [&, t, lo, hi] { parts[t] = work( lo, hi ); } );
    }
    for ( auto& th : pool )
    {
      th.join();
    }
    for ( auto const& p : parts )
    {
      total.merge( p );
    }
  }

  if ( total.weight == 0 )
  {
    throw data_error( "the input distribution has zero total weight" );
  }
  return { detail::make_rational( total.wrong, total.weight ), detail::make_rational( total.err, total.weight ),
           detail::make_rational( total.abs_err, total.weight ), total.pairs };
}

namespace detail
{

inline void check_ds_params( unsigned wl, std::uint32_t x, std::uint32_t x2 )
{
  if ( wl == 0u || wl > 30u )
  {
    throw parameter_error( "word length must be in 1..30" );
  }
  for ( auto v : { x, x2 } )
  {
    if ( v == 0u || !std::has_single_bit( v ) || v > domain_size( wl ) )
    {
      throw parameter_error( "DS step " + std::to_string( v ) + " must be a power of two not above 2^wl" );
    }
  }
}

} // namespace detail

/*! \brief Closed form for a wl-bit adder with DS_x and DS_x' on its inputs. */
inline error_stats metrics_closed_ds_add( unsigned wl, std::uint32_t x, std::uint32_t x2 )
{
  detail::check_ds_params( wl, x, x2 );
  auto const X = static_cast<std::int64_t>( x ), X2 = static_cast<std::int64_t>( x2 );
  auto const pe = rational( 1 ) - rational( 1, X * X2 );
  auto const me = rational( X - 1, 2 ) + rational( X2 - 1, 2 );
  return { pe, me, me, domain_size( 2u * wl ) };
}

/*! \brief Closed form for a wl x wl multiplier with DS_x and DS_x' on its inputs. */
inline error_stats metrics_closed_ds_mul( unsigned wl, std::uint32_t x, std::uint32_t x2 )
{
  detail::check_ds_params( wl, x, x2 );
  auto const X = static_cast<std::int64_t>( x ), X2 = static_cast<std::int64_t>( x2 );
  auto const D = static_cast<std::int64_t>( domain_size( wl ) );
  // products are correct iff both inputs are grid points, or either input is 0
  auto const pe = rational( 1 ) - ( rational( 1, X * X2 ) + ( rational( 2 ) - rational( 1, X ) - rational( 1, X2 ) ) / D );
  auto const mu = rational( D - 1, 2 );
  auto const mu_a = mu - rational( X - 1, 2 ), mu_b = mu - rational( X2 - 1, 2 );
  auto const me = mu * mu - mu_a * mu_b;
  return { pe, me, me, domain_size( 2u * wl ) };
}

enum class formula_family
{
  ds_add,
  ds_mul,
  th_add,
  th_mul
};

inline formula_family parse_formula_family( std::string_view s )
{
  if ( s == "ds-add" )
    return formula_family::ds_add;
  if ( s == "ds-mul" )
    return formula_family::ds_mul;
  if ( s == "th-add" )
    return formula_family::th_add;
  if ( s == "th-mul" )
    return formula_family::th_mul;
  throw parameter_error( "unknown formula family '" + std::string( s ) + "' (expected ds-add, ds-mul, th-add, th-mul)" );
}

struct formula_row
{
  std::string name;     ///< e.g. "pe (published)"
  double published{ 0.0 };
  double oracle{ 0.0 };
  bool agree{ false };
};

struct formula_report
{
  formula_family family{ formula_family::ds_add };
  error_stats oracle;
  std::vector<formula_row> rows;
};

/*! \brief Evaluates the published PE / ME expressions verbatim next to the oracle.
 *
 * The published expressions assume the same preprocessing on both inputs,
 * so x is used for both operands. `m` is the symbol M of the threshold mean
 * expressions; it is required for the threshold families.
 */
inline formula_report published_formula_report( unsigned wl, std::uint32_t x, std::uint32_t y, formula_family family,
                                            std::optional<double> m = std::nullopt )
{
  if ( wl == 0u || wl > 12u )
  {
    throw parameter_error( "formula report word length must be in 1..12" );
  }
  bool const th = family == formula_family::th_add || family == formula_family::th_mul;
  if ( th && !m )
  {
    throw parameter_error( "the threshold mean-error expressions use the undefined symbol M; pass a value for it (--m)" );
  }

  preprocess_chain chain;
  if ( th )
  {
    chain.steps.push_back( preprocessing::threshold( x, y ) );
  }
  else
  {
    detail::check_ds_params( wl, x, x );
    chain.steps.push_back( preprocessing::down_sample( x ) );
  }
  auto const spec = family == formula_family::ds_add || family == formula_family::th_add ? block_spec::adder( wl, wl )
                                                                                         : block_spec::multiplier( wl, wl );
  formula_report rep;
  rep.family = family;
  rep.oracle = metrics_oracle( spec, chain, chain );
  auto const ope = to_double( rep.oracle.pe ), ome = to_double( rep.oracle.me );

  auto const W = static_cast<double>( wl );
  auto const X = static_cast<double>( x );
  auto const k = th ? 0.0 : std::log2( X );
  auto p2 = []( double e ) { return std::exp2( e ); };
  auto add = [&]( std::string name, double published, double oracle ) {
    auto const agree = std::abs( published - oracle ) <= 1e-9 * std::max( 1.0, std::abs( oracle ) );
    rep.rows.push_back( { std::move( name ), published, oracle, agree } );
  };

  switch ( family )
  {
  case formula_family::ds_add:
    add( "pe (published)", 1.0 - ( 1.0 / p2( k ) ) * ( 1.0 / p2( k ) ), ope );
    add( "me (published)", p2( k - 1.0 ) * ( p2( W - 1.0 ) - 1.0 ) + 0.25, ome );
    break;
  case formula_family::ds_mul:
    add( "pe (published)", 1.0 - ( ( 1.0 / p2( k ) ) * ( 1.0 / p2( k ) ) + ( 2.0 / p2( W ) - 2.0 / p2( k + W ) ) ), ope );
    add( "me (published)", p2( W + k - 1.0 ) - p2( W - 1.0 ) - p2( 2.0 * W - 2.0 ) + 0.25, ome );
    add( "me (published, exponent 2k-2)", p2( W + k - 1.0 ) - p2( W - 1.0 ) - p2( 2.0 * k - 2.0 ) + 0.25, ome );
    break;
  case formula_family::th_add:
    add( "pe (published)", 1.0 - ( X / p2( W ) ) * ( X / p2( W ) ), ope );
    add( "me (published)", ( 1.0 - X / p2( W ) ) * ( p2( W ) + X - 1.0 - 2.0 * *m ), ome );
    break;
  case formula_family::th_mul:
  {
    add( "pe (published)", 1.0 - ( ( X / p2( W ) ) * ( X / p2( W ) ) + 2.0 * ( p2( W - X ) / p2( 2.0 * W ) ) ), ope );
    auto const a = p2( W - X ) / p2( W );
    auto const b = p2( W + X - 1.0 ) / 2.0;
    add( "me (published)", 2.0 * ( a * ( X / p2( W ) ) ) * b * ( ( X - 1.0 ) / 2.0 - *m ) + ( a * a ) * ( b * b - *m * *m ), ome );
    break;
  }
  }
  return rep;
}

} // namespace ppc
