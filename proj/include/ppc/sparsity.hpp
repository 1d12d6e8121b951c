/*!
  \file sparsity.hpp
  \brief Preprocessings (down-sampling, thresholding), natural ranges,
         reachable value sets and histograms

  Operand values are handled as encodings: an unsigned integer holding the
  `wl` low bits of the operand. Two's-complement operands are stored as
  their bit pattern and decoded with `decode_value`.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ppc
{

using encoding = std::uint32_t;

/* widest operand domain a value_set will enumerate */
inline constexpr unsigned max_value_set_wl = 24u;

enum class interpretation
{
  unsigned_int,
  twos_complement
};

inline constexpr std::uint64_t domain_size( unsigned wl ) { return std::uint64_t{ 1 } << wl; }

inline constexpr std::uint64_t wl_mask( unsigned wl ) { return domain_size( wl ) - 1u; }

inline std::int64_t decode_value( std::uint64_t enc, unsigned wl, interpretation interp )
{
  enc &= wl_mask( wl );
  if ( interp == interpretation::twos_complement && wl > 0u && ( enc >> ( wl - 1u ) ) != 0u )
  {
    return static_cast<std::int64_t>( enc ) - static_cast<std::int64_t>( domain_size( wl ) );
  }
  return static_cast<std::int64_t>( enc );
}

inline std::uint64_t encode_value( std::int64_t value, unsigned wl )
{
  return static_cast<std::uint64_t>( value ) & wl_mask( wl );
}

inline std::int64_t min_value( unsigned wl, interpretation interp )
{
  return interp == interpretation::unsigned_int ? 0 : -static_cast<std::int64_t>( domain_size( wl - 1u ) );
}

inline std::int64_t max_value( unsigned wl, interpretation interp )
{
  return interp == interpretation::unsigned_int ? static_cast<std::int64_t>( wl_mask( wl ) )
                                                : static_cast<std::int64_t>( domain_size( wl - 1u ) ) - 1;
}

enum class preprocessing_kind
{
  identity,
  down_sample,
  threshold
};

/*! \brief One preprocessing step: identity, DS_x or TH_x^y. */
struct preprocessing
{
  preprocessing_kind kind{ preprocessing_kind::identity };
  std::uint32_t x{ 1u };
  std::uint32_t y{ 0u };

  static preprocessing identity() { return {}; }

  static preprocessing down_sample( std::uint32_t step )
  {
    if ( !std::has_single_bit( step ) )
    {
      throw parameter_error( "down-sampling step " + std::to_string( step ) + " is not a power of two" );
    }
    return { preprocessing_kind::down_sample, step, 0u };
  }

  static preprocessing threshold( std::uint32_t x, std::uint32_t y )
  {
    return { preprocessing_kind::threshold, x, y };
  }

  /*! \brief log2 of the down-sampling step (number of cleared low bits). */
  unsigned log2_step() const
  {
    return kind == preprocessing_kind::down_sample ? static_cast<unsigned>( std::countr_zero( x ) ) : 0u;
  }

  /*! \brief Checks the parameters against an operand of width `wl`. */
  void validate( unsigned wl, interpretation interp ) const
  {
    switch ( kind )
    {
    case preprocessing_kind::identity:
      break;
    case preprocessing_kind::down_sample:
      if ( !std::has_single_bit( x ) || x > domain_size( wl ) )
      {
        throw parameter_error( "DS step " + std::to_string( x ) + " invalid for a " + std::to_string( wl ) + "-bit operand" );
      }
      break;
    case preprocessing_kind::threshold:
      if ( interp != interpretation::unsigned_int )
      {
        throw unsupported_preprocessing_error( "thresholding is only defined for unsigned operands" );
      }
      if ( x > domain_size( wl ) || y >= domain_size( wl ) )
      {
        throw parameter_error( "TH parameters x=" + std::to_string( x ) + ", y=" + std::to_string( y ) +
                               " outside the " + std::to_string( wl ) + "-bit domain" );
      }
      break;
    }
  }

  std::string to_string() const
  {
    switch ( kind )
    {
    case preprocessing_kind::down_sample:
      return "ds:" + std::to_string( x );
    case preprocessing_kind::threshold:
      return "th:" + std::to_string( x ) + ":" + std::to_string( y );
    default:
      return "id";
    }
  }

  bool operator==( preprocessing const& ) const = default;
};

/*! \brief DS_x: clears the low log2(x) bits of the encoding. */
inline encoding ds_apply( encoding v, std::uint32_t x )
{
  if ( !std::has_single_bit( x ) )
  {
    throw parameter_error( "down-sampling step " + std::to_string( x ) + " is not a power of two" );
  }
  return v & ~( x - 1u );
}

/*! \brief TH_x^y: values below x become y. Unsigned operands only. */
inline encoding th_apply( encoding v, std::uint32_t x, std::uint32_t y,
                          interpretation interp = interpretation::unsigned_int )
{
  if ( interp != interpretation::unsigned_int )
  {
    throw unsupported_preprocessing_error( "thresholding is only defined for unsigned operands" );
  }
  return v < x ? y : v;
}

inline encoding apply( preprocessing const& p, encoding v, interpretation interp = interpretation::unsigned_int )
{
  switch ( p.kind )
  {
  case preprocessing_kind::down_sample:
    return ds_apply( v, p.x );
  case preprocessing_kind::threshold:
    return th_apply( v, p.x, p.y, interp );
  default:
    return v;
  }
}

/*! \brief Ordered composition of preprocessings, applied in list order. */
struct preprocess_chain
{
  std::vector<preprocessing> steps;

  preprocess_chain() = default;
  preprocess_chain( std::initializer_list<preprocessing> s ) : steps( s ) {}
  explicit preprocess_chain( std::vector<preprocessing> s ) : steps( std::move( s ) ) {}

  bool is_identity() const
  {
    return std::all_of( steps.begin(), steps.end(),
                        []( auto const& p ) { return p.kind == preprocessing_kind::identity; } );
  }

  void validate( unsigned wl, interpretation interp ) const
  {
    for ( auto const& p : steps )
    {
      p.validate( wl, interp );
    }
  }

  /*! \brief Largest DS step in the chain (1 if there is none). */
  std::uint32_t down_sample_step() const
  {
    std::uint32_t s = 1u;
    for ( auto const& p : steps )
    {
      if ( p.kind == preprocessing_kind::down_sample )
      {
        s = std::max( s, p.x );
      }
    }
    return s;
  }

  std::string to_string() const
  {
    if ( steps.empty() )
    {
      return "id";
    }
    std::string s;
    for ( auto const& p : steps )
    {
      if ( !s.empty() )
      {
        s += '+';
      }
      s += p.to_string();
    }
    return s;
  }

  bool operator==( preprocess_chain const& ) const = default;
};

inline encoding chain_apply( preprocess_chain const& chain, encoding v,
                             interpretation interp = interpretation::unsigned_int )
{
  for ( auto const& p : chain.steps )
  {
    v = apply( p, v, interp );
  }
  return v;
}

namespace detail
{

inline std::uint32_t parse_uint( std::string_view s, std::string_view what )
{
  if ( s.empty() || s.size() > 9u || !std::all_of( s.begin(), s.end(), []( char c ) { return c >= '0' && c <= '9'; } ) )
  {
    throw parameter_error( "invalid number '" + std::string( s ) + "' in " + std::string( what ) );
  }
  return static_cast<std::uint32_t>( std::stoul( std::string( s ) ) );
}

inline std::vector<std::string_view> split( std::string_view s, char sep )
{
  std::vector<std::string_view> parts;
  std::size_t start = 0u;
  while ( true )
  {
    auto const pos = s.find( sep, start );
    parts.push_back( s.substr( start, pos == std::string_view::npos ? std::string_view::npos : pos - start ) );
    if ( pos == std::string_view::npos )
    {
      break;
    }
    start = pos + 1u;
  }
  return parts;
}

} // namespace detail

/*! \brief Parses `id`, `ds:<x>`, `th:<x>:<y>`. */
inline preprocessing parse_preprocessing( std::string_view text )
{
  auto const parts = detail::split( text, ':' );
  if ( parts[0] == "id" && parts.size() == 1u )
  {
    return preprocessing::identity();
  }
  if ( parts[0] == "ds" && parts.size() == 2u )
  {
    return preprocessing::down_sample( detail::parse_uint( parts[1], text ) );
  }
  if ( parts[0] == "th" && parts.size() == 3u )
  {
    return preprocessing::threshold( detail::parse_uint( parts[1], text ), detail::parse_uint( parts[2], text ) );
  }
  throw parameter_error( "unknown preprocessing '" + std::string( text ) + "' (expected id, ds:<x> or th:<x>:<y>)" );
}

/*! \brief Parses a `+`-joined chain such as `th:48:48+ds:16`. */
inline preprocess_chain parse_chain( std::string_view text )
{
  preprocess_chain chain;
  for ( auto part : detail::split( text, '+' ) )
  {
    auto const p = parse_preprocessing( part );
    if ( p.kind != preprocessing_kind::identity )
    {
      chain.steps.push_back( p );
    }
  }
  return chain;
}

/*! \brief Inclusive numeric range of values an operand actually takes. */
struct natural_range
{
  std::int64_t lo{ 0 };
  std::int64_t hi{ 0 };
  interpretation interp{ interpretation::unsigned_int };

  static natural_range full( unsigned wl, interpretation interp = interpretation::unsigned_int )
  {
    return { min_value( wl, interp ), max_value( wl, interp ), interp };
  }

  void validate( unsigned wl ) const
  {
    if ( lo > hi || lo < min_value( wl, interp ) || hi > max_value( wl, interp ) )
    {
      throw parameter_error( "natural range [" + std::to_string( lo ) + "," + std::to_string( hi ) +
                             "] invalid for a " + std::to_string( wl ) + "-bit operand" );
    }
  }

  bool contains( std::int64_t v ) const { return v >= lo && v <= hi; }

  std::uint64_t size() const { return static_cast<std::uint64_t>( hi - lo ) + 1u; }

  bool operator==( natural_range const& ) const = default;
};

/*! \brief Parses `lo:hi` (values may be negative for signed operands). */
inline natural_range parse_natural_range( std::string_view text, interpretation interp = interpretation::unsigned_int )
{
  auto const parts = detail::split( text, ':' );
  if ( parts.size() != 2u )
  {
    throw parameter_error( "natural range '" + std::string( text ) + "' must be lo:hi" );
  }
  auto num = [&]( std::string_view s ) -> std::int64_t {
    bool const neg = !s.empty() && s.front() == '-';
    auto const v = static_cast<std::int64_t>( detail::parse_uint( neg ? s.substr( 1 ) : s, text ) );
    return neg ? -v : v;
  };
  return { num( parts[0] ), num( parts[1] ), interp };
}

/*! \brief Set of operand encodings, stored as sorted disjoint inclusive intervals. */
class value_set
{
public:
  struct interval
  {
    encoding lo;
    encoding hi;
    bool operator==( interval const& ) const = default;
  };

  value_set() = default;

  explicit value_set( unsigned wl ) : wl_( wl )
  {
    if ( wl > max_value_set_wl )
    {
      throw capacity_error( "value sets are limited to " + std::to_string( max_value_set_wl ) + "-bit domains" );
    }
  }

  static value_set full( unsigned wl )
  {
    value_set s( wl );
    s.intervals_.push_back( { 0u, static_cast<encoding>( wl_mask( wl ) ) } );
    return s;
  }

  /*! \brief Builds a set from arbitrary (unsorted, repeated) encodings. */
  static value_set from_values( unsigned wl, std::vector<encoding> values )
  {
    value_set s( wl );
    std::sort( values.begin(), values.end() );
    values.erase( std::unique( values.begin(), values.end() ), values.end() );
    for ( auto v : values )
    {
      s.push_back( v );
    }
    return s;
  }

  /*! \brief Builds a set from a membership mask indexed by encoding. */
  static value_set from_mask( unsigned wl, std::vector<bool> const& mask )
  {
    value_set s( wl );
    for ( std::size_t v = 0; v < mask.size(); ++v )
    {
      if ( mask[v] )
      {
        s.push_back( static_cast<encoding>( v ) );
      }
    }
    return s;
  }

  unsigned wl() const { return wl_; }

  std::vector<interval> const& intervals() const { return intervals_; }

  std::uint64_t size() const
  {
    return std::accumulate( intervals_.begin(), intervals_.end(), std::uint64_t{ 0 },
                            []( std::uint64_t acc, interval const& i ) { return acc + ( i.hi - i.lo ) + 1u; } );
  }

  bool empty() const { return intervals_.empty(); }

  bool is_full() const { return size() == domain_size( wl_ ); }

  bool contains( encoding v ) const
  {
    auto it = std::upper_bound( intervals_.begin(), intervals_.end(), v,
                                []( encoding x, interval const& i ) { return x < i.lo; } );
    return it != intervals_.begin() && std::prev( it )->hi >= v;
  }

  template<class Fn>
  void for_each( Fn&& fn ) const
  {
    for ( auto const& i : intervals_ )
    {
      for ( std::uint64_t v = i.lo; v <= i.hi; ++v )
      {
        fn( static_cast<encoding>( v ) );
      }
    }
  }

  std::vector<encoding> members() const
  {
    std::vector<encoding> out;
    out.reserve( size() );
    for_each( [&]( encoding v ) { out.push_back( v ); } );
    return out;
  }

  /*! \brief Membership mask indexed by encoding (size 2^wl). */
  std::vector<bool> mask() const
  {
    std::vector<bool> m( domain_size( wl_ ), false );
    for_each( [&]( encoding v ) { m[v] = true; } );
    return m;
  }

  /*! \brief Set of bit fields `(v >> shift) & (2^width - 1)` over all members. */
  value_set project( unsigned shift, unsigned width ) const
  {
    std::vector<bool> m( domain_size( width ), false );
    for_each( [&]( encoding v ) { m[( v >> shift ) & wl_mask( width )] = true; } );
    return from_mask( width, m );
  }

  /*! \brief Common trailing-zero count of all members (wl for {0}, 0 for empty). */
  unsigned common_zero_low_bits() const
  {
    encoding acc = 0u;
    for_each( [&]( encoding v ) { acc |= v; } );
    return empty() ? 0u : ( acc == 0u ? wl_ : static_cast<unsigned>( std::countr_zero( acc ) ) );
  }

  std::string to_string() const
  {
    std::string s = "{";
    for ( auto const& i : intervals_ )
    {
      if ( s.size() > 1u )
      {
        s += ',';
      }
      s += std::to_string( i.lo );
      if ( i.hi != i.lo )
      {
        s += ".." + std::to_string( i.hi );
      }
    }
    return s + "}";
  }

  bool operator==( value_set const& ) const = default;

private:
  void push_back( encoding v )
  {
    if ( v > wl_mask( wl_ ) )
    {
      throw parameter_error( "value " + std::to_string( v ) + " outside the " + std::to_string( wl_ ) + "-bit domain" );
    }
    if ( !intervals_.empty() && intervals_.back().hi + 1u == v )
    {
      intervals_.back().hi = v;
    }
    else
    {
      intervals_.push_back( { v, v } );
    }
  }

  unsigned wl_{ 0u };
  std::vector<interval> intervals_;
};

/*! \brief Image of the natural range under the chain, as a value set. */
inline value_set reachable_set( unsigned wl, interpretation interp, natural_range const& natural,
                                preprocess_chain const& chain )
{
  if ( wl == 0u || wl > max_value_set_wl )
  {
    throw capacity_error( "reachable-set computation supports 1.." + std::to_string( max_value_set_wl ) + " bit operands" );
  }
  natural.validate( wl );
  chain.validate( wl, interp );
  std::vector<bool> m( domain_size( wl ), false );
  for ( std::int64_t v = natural.lo; v <= natural.hi; ++v )
  {
    auto const enc = static_cast<encoding>( encode_value( v, wl ) );
    m[chain_apply( chain, enc, interp ) & wl_mask( wl )] = true;
  }
  return value_set::from_mask( wl, m );
}

inline value_set reachable_set( unsigned wl, preprocess_chain const& chain )
{
  return reachable_set( wl, interpretation::unsigned_int, natural_range::full( wl ), chain );
}

/*! \brief Occurrence counts of the encodings of a `wl`-bit signal. */
class histogram
{
public:
  histogram() = default;
  explicit histogram( unsigned wl ) : wl_( wl ), counts_( domain_size( wl ), 0u ) {}

  unsigned wl() const { return wl_; }
  std::vector<std::uint64_t> const& counts() const { return counts_; }

  void add( std::uint64_t v, std::uint64_t n = 1u )
  {
    if ( v >= counts_.size() )
    {
      throw data_error( "value " + std::to_string( v ) + " outside the " + std::to_string( wl_ ) + "-bit domain" );
    }
    counts_[v] += n;
  }

  void merge( histogram const& other )
  {
    if ( other.wl_ != wl_ )
    {
      throw parameter_error( "cannot merge histograms of different word lengths" );
    }
    for ( std::size_t i = 0; i < counts_.size(); ++i )
    {
      counts_[i] += other.counts_[i];
    }
  }

  std::uint64_t total() const { return std::accumulate( counts_.begin(), counts_.end(), std::uint64_t{ 0 } ); }

  /*! \brief Relative frequencies; all zero when the histogram is empty. */
  std::vector<double> normalized() const
  {
    std::vector<double> out( counts_.size(), 0.0 );
    auto const t = total();
    if ( t != 0u )
    {
      for ( std::size_t i = 0; i < counts_.size(); ++i )
      {
        out[i] = static_cast<double>( counts_[i] ) / static_cast<double>( t );
      }
    }
    return out;
  }

  /*! \brief Set of values with a nonzero count. */
  value_set support() const
  {
    std::vector<bool> m( counts_.size() );
    for ( std::size_t i = 0; i < counts_.size(); ++i )
    {
      m[i] = counts_[i] != 0u;
    }
    return value_set::from_mask( wl_, m );
  }

  bool operator==( histogram const& ) const = default;

private:
  unsigned wl_{ 0u };
  std::vector<std::uint64_t> counts_;
};

inline histogram histogram_of( std::span<encoding const> values, unsigned wl )
{
  histogram h( wl );
  for ( auto v : values )
  {
    h.add( v );
  }
  return h;
}

} // namespace ppc
