/*!
  \file cover.hpp
  \brief Cubes, covers and dense multi-output functions with don't-cares

  Input position i of a cube (its i-th character in PLA notation) is minterm
  bit n-1-i, so the PLA input part reads as the binary minterm index with
  operand a in the high bits. Output position k is output bit m-1-k.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "../errors.hpp"
#include "../truth_table.hpp"

namespace ppc
{

inline constexpr unsigned max_cube_inputs = 32u;
inline constexpr unsigned max_cube_outputs = 64u;

/*! \brief Product term: `care` marks fixed minterm bits, `value` their polarity;
 *         `outputs` has bit j set when the cube participates in output j. */
struct cube
{
  std::uint32_t care{ 0u };
  std::uint32_t value{ 0u };
  std::uint64_t outputs{ 0u };

  unsigned literals() const { return static_cast<unsigned>( std::popcount( care ) ); }

  bool contains_minterm( std::uint64_t m ) const { return ( static_cast<std::uint32_t>( m ) & care ) == value; }

  /*! \brief Input-part containment: every minterm of `other` is a minterm of this cube. */
  bool contains_inputs( cube const& other ) const
  {
    return ( care & ~other.care ) == 0u && ( other.value & care ) == value;
  }

  bool contains( cube const& other ) const
  {
    return contains_inputs( other ) && ( other.outputs & ~outputs ) == 0u;
  }

  /*! \brief Calls fn(m) for every minterm of the input part (n input bits). */
  template<class Fn>
  void for_each_minterm( unsigned n, Fn&& fn ) const
  {
    auto const free = static_cast<std::uint32_t>( wl_mask( n ) ) & ~care;
    std::uint32_t sub = 0u;
    do
    {
      fn( static_cast<std::uint64_t>( value | sub ) );
      sub = ( sub - free ) & free;
    } while ( sub != 0u );
  }

  std::uint64_t num_minterms( unsigned n ) const { return std::uint64_t{ 1 } << ( n - literals() ); }

  std::string input_string( unsigned n ) const
  {
    std::string s( n, '-' );
    for ( unsigned i = 0; i < n; ++i )
    {
      auto const bit = n - 1u - i;
      if ( ( care >> bit ) & 1u )
      {
        s[i] = ( ( value >> bit ) & 1u ) ? '1' : '0';
      }
    }
    return s;
  }

  std::string output_string( unsigned m ) const
  {
    std::string s( m, '0' );
    for ( unsigned k = 0; k < m; ++k )
    {
      if ( ( outputs >> ( m - 1u - k ) ) & 1u )
      {
        s[k] = '1';
      }
    }
    return s;
  }

  std::string to_string( unsigned n, unsigned m ) const { return input_string( n ) + ' ' + output_string( m ); }

  static cube from_minterm( std::uint64_t mt, unsigned n, std::uint64_t outputs )
  {
    auto const full = static_cast<std::uint32_t>( wl_mask( n ) );
    return { full, static_cast<std::uint32_t>( mt ) & full, outputs };
  }

  /*! \brief Parses an input part over {0,1,-}; returns false on a bad character. */
  static bool parse_inputs( std::string_view s, cube& c )
  {
    auto const n = static_cast<unsigned>( s.size() );
    c.care = c.value = 0u;
    for ( unsigned i = 0; i < n; ++i )
    {
      auto const bit = std::uint32_t{ 1 } << ( n - 1u - i );
      switch ( s[i] )
      {
      case '0':
        c.care |= bit;
        break;
      case '1':
        c.care |= bit;
        c.value |= bit;
        break;
      case '-':
      case '2':
        break;
      default:
        return false;
      }
    }
    return true;
  }

  bool operator==( cube const& ) const = default;
};

enum class cover_provenance
{
  exact,
  heuristic,
  imported,
  canonical
};

inline char const* to_string( cover_provenance p )
{
  switch ( p )
  {
  case cover_provenance::exact:
    return "exact";
  case cover_provenance::heuristic:
    return "heuristic";
  case cover_provenance::imported:
    return "imported";
  default:
    return "canonical";
  }
}

/*! \brief Multi-output sum-of-products cover. */
struct cover
{
  unsigned num_inputs{ 0u };
  unsigned num_outputs{ 0u };
  std::vector<cube> cubes;
  cover_provenance provenance{ cover_provenance::canonical };

  /*! \brief Input literals, each cube counted once regardless of output fan-out. */
  std::uint64_t literal_count() const
  {
    std::uint64_t n = 0u;
    for ( auto const& c : cubes )
    {
      n += c.literals();
    }
    return n;
  }

  std::size_t cube_count() const { return cubes.size(); }

  /*! \brief Sorts cubes by their PLA text and drops duplicates. */
  void normalize()
  {
    std::sort( cubes.begin(), cubes.end(), [this]( cube const& x, cube const& y ) {
      return x.to_string( num_inputs, num_outputs ) < y.to_string( num_inputs, num_outputs );
    } );
    cubes.erase( std::unique( cubes.begin(), cubes.end() ), cubes.end() );
  }

  /*! \brief Equality of dimensions and cube lists (provenance is metadata). */
  bool same_cubes( cover const& other ) const
  {
    return num_inputs == other.num_inputs && num_outputs == other.num_outputs && cubes == other.cubes;
  }
};

/*! \brief Statistics of one minimization run. */
struct minimize_stats
{
  std::uint64_t literals{ 0u };
  std::uint64_t cubes{ 0u };
  std::uint64_t iterations{ 0u };
  bool exact{ false };
};

inline minimize_stats stats_of( cover const& c, std::uint64_t iterations, bool exact )
{
  return { c.literal_count(), c.cube_count(), iterations, exact };
}

/*! \brief Dense multi-output incompletely specified function: per output an ON set and a DC set. */
class multi_output_function
{
public:
  using bitset = boost::dynamic_bitset<std::uint64_t>;

  multi_output_function( unsigned num_inputs, unsigned num_outputs )
      : n_( num_inputs ), m_( num_outputs ),
        on_( num_outputs, bitset( domain_size( num_inputs ) ) ),
        dc_( num_outputs, bitset( domain_size( num_inputs ) ) )
  {
    if ( num_inputs > max_cube_inputs || num_outputs > max_cube_outputs || num_outputs == 0u )
    {
      throw capacity_error( "functions are limited to " + std::to_string( max_cube_inputs ) + " inputs and 1.." +
                            std::to_string( max_cube_outputs ) + " outputs" );
    }
  }

  static multi_output_function from_truth_table( truth_table const& tt )
  {
    if ( tt.num_inputs() > max_enumeration_inputs )
    {
      throw capacity_error( "dense tables are limited to " + std::to_string( max_enumeration_inputs ) + " input bits" );
    }
    multi_output_function f( tt.num_inputs(), tt.num_outputs() );
    for ( std::uint64_t mt = 0u; mt < tt.num_rows(); ++mt )
    {
      auto const r = tt.row( mt );
      if ( !r )
      {
        f.set_dont_care_row( mt );
        continue;
      }
      for ( unsigned j = 0; j < f.m_; ++j )
      {
        if ( ( *r >> j ) & 1u )
        {
          f.on_[j].set( mt );
        }
      }
    }
    return f;
  }

  unsigned num_inputs() const { return n_; }
  unsigned num_outputs() const { return m_; }
  std::uint64_t num_minterms() const { return domain_size( n_ ); }

  bool is_on( unsigned j, std::uint64_t mt ) const { return on_[j].test( mt ); }
  bool is_dc( unsigned j, std::uint64_t mt ) const { return dc_[j].test( mt ); }
  bool is_off( unsigned j, std::uint64_t mt ) const { return !on_[j].test( mt ) && !dc_[j].test( mt ); }

  void set_on( unsigned j, std::uint64_t mt )
  {
    on_[j].set( mt );
    dc_[j].reset( mt );
  }

  void set_dc( unsigned j, std::uint64_t mt )
  {
    dc_[j].set( mt );
    on_[j].reset( mt );
  }

  void set_off( unsigned j, std::uint64_t mt )
  {
    on_[j].reset( mt );
    dc_[j].reset( mt );
  }

  void set_dont_care_row( std::uint64_t mt )
  {
    for ( unsigned j = 0; j < m_; ++j )
    {
      set_dc( j, mt );
    }
  }

  bitset const& on_set( unsigned j ) const { return on_[j]; }
  bitset const& dc_set( unsigned j ) const { return dc_[j]; }

  /*! \brief Outputs that are 1 at minterm mt. */
  std::uint64_t on_mask( std::uint64_t mt ) const
  {
    std::uint64_t r = 0u;
    for ( unsigned j = 0; j < m_; ++j )
    {
      r |= std::uint64_t{ on_[j].test( mt ) } << j;
    }
    return r;
  }

  /*! \brief Outputs that are 1 or don't-care at minterm mt. */
  std::uint64_t care_free_mask( std::uint64_t mt ) const
  {
    std::uint64_t r = 0u;
    for ( unsigned j = 0; j < m_; ++j )
    {
      r |= std::uint64_t{ on_[j].test( mt ) || dc_[j].test( mt ) } << j;
    }
    return r;
  }

  std::uint64_t on_count() const
  {
    std::uint64_t n = 0u;
    for ( auto const& s : on_ )
    {
      n += s.count();
    }
    return n;
  }

  bool operator==( multi_output_function const& ) const = default;

private:
  unsigned n_;
  unsigned m_;
  std::vector<bitset> on_;
  std::vector<bitset> dc_;
};

/*! \brief One cube per minterm that is ON for at least one output. */
inline cover canonical_minterm_cover( multi_output_function const& f )
{
  cover c{ f.num_inputs(), f.num_outputs(), {}, cover_provenance::canonical };
  for ( std::uint64_t mt = 0u; mt < f.num_minterms(); ++mt )
  {
    if ( auto const on = f.on_mask( mt ); on != 0u )
    {
      c.cubes.push_back( cube::from_minterm( mt, f.num_inputs(), on ) );
    }
  }
  return c;
}

} // namespace ppc
