/*!
  \file heuristic.hpp
  \brief Espresso-style two-level minimization: EXPAND, IRREDUNDANT, REDUCE

  The loop starts from the canonical minterm cover and keeps the best cover
  seen after each IRREDUNDANT step, so the result never has more literals
  than the minterm cover. The OFF set is never built explicitly; blocking
  checks enumerate the minterms a raise would add.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cover.hpp"

namespace ppc
{

inline constexpr unsigned max_heuristic_inputs = 20u;

namespace detail
{

class espresso_loop
{
public:
  explicit espresso_loop( multi_output_function const& f )
      : f_( f ), n_( f.num_inputs() ), m_( f.num_outputs() ), count_( f.num_minterms() * f.num_outputs(), 0u )
  {
  }

  std::pair<cover, std::uint64_t> run( unsigned max_iters )
  {
    cover best = canonical_minterm_cover( f_ );
    best.provenance = cover_provenance::heuristic;
    cubes_ = best.cubes;

    std::uint64_t iterations = 0u;
    while ( iterations < max_iters )
    {
      ++iterations;
      expand();
      irredundant();
      cover current{ n_, m_, cubes_, cover_provenance::heuristic };
      if ( !better( current, best ) )
      {
        break;
      }
      best = std::move( current );
      reduce();
    }
    best.normalize();
    return { best, iterations };
  }

private:
  static bool better( cover const& x, cover const& y )
  {
    auto const lx = x.literal_count(), ly = y.literal_count();
    return lx != ly ? lx < ly : x.cube_count() < y.cube_count();
  }

  /*! true if the input part of c hits the OFF set of some output in `outputs` */
  bool hits_off( cube const& c, std::uint64_t outputs ) const
  {
    bool hit = false;
    c.for_each_minterm( n_, [&]( std::uint64_t mt ) {
      if ( hit )
      {
        return;
      }
      for ( auto o = outputs; o != 0u; o &= o - 1u )
      {
        if ( f_.is_off( static_cast<unsigned>( std::countr_zero( o ) ), mt ) )
        {
          hit = true;
          return;
        }
      }
    } );
    return hit;
  }

  /*! descending minterm coverage, then PLA text */
  void sort_cubes()
  {
    std::stable_sort( cubes_.begin(), cubes_.end(), [this]( cube const& x, cube const& y ) {
      if ( x.literals() != y.literals() )
      {
        return x.literals() < y.literals();
      }
      return x.to_string( n_, m_ ) < y.to_string( n_, m_ );
    } );
  }

  void expand()
  {
    sort_cubes();
    std::vector<bool> covered( cubes_.size(), false );
    for ( std::size_t i = 0; i < cubes_.size(); ++i )
    {
      if ( covered[i] )
      {
        continue;
      }
      auto& c = cubes_[i];
      for ( unsigned bit = 0; bit < n_; ++bit )
      {
        if ( !( ( c.care >> bit ) & 1u ) )
        {
          continue;
        }
        // only the mirrored half is new
        auto mirror = c;
        mirror.value ^= 1u << bit;
        if ( !hits_off( mirror, c.outputs ) )
        {
          c.care &= ~( 1u << bit );
          c.value &= ~( 1u << bit );
        }
      }
      for ( unsigned j = 0; j < m_; ++j )
      {
        if ( !( ( c.outputs >> j ) & 1u ) && !hits_off( c, std::uint64_t{ 1 } << j ) )
        {
          c.outputs |= std::uint64_t{ 1 } << j;
        }
      }
      for ( std::size_t k = 0; k < cubes_.size(); ++k )
      {
        if ( k != i && !covered[k] && c.contains( cubes_[k] ) )
        {
          covered[k] = true;
        }
      }
    }
    std::vector<cube> kept;
    for ( std::size_t i = 0; i < cubes_.size(); ++i )
    {
      if ( !covered[i] )
      {
        kept.push_back( cubes_[i] );
      }
    }
    cubes_ = std::move( kept );
  }

  std::uint32_t& count( std::uint64_t mt, unsigned j ) { return count_[mt * m_ + j]; }

  template<class Fn>
  void for_each_on_pair( cube const& c, Fn&& fn ) const
  {
    c.for_each_minterm( n_, [&]( std::uint64_t mt ) {
      for ( auto o = c.outputs; o != 0u; o &= o - 1u )
      {
        auto const j = static_cast<unsigned>( std::countr_zero( o ) );
        if ( f_.is_on( j, mt ) )
        {
          fn( mt, j );
        }
      }
    } );
  }

  void recount()
  {
    std::fill( count_.begin(), count_.end(), 0u );
    for ( auto const& c : cubes_ )
    {
      for_each_on_pair( c, [&]( std::uint64_t mt, unsigned j ) { ++count( mt, j ); } );
    }
  }

  void irredundant()
  {
    recount();
    // try to drop the most expensive cubes first
    std::vector<std::size_t> order( cubes_.size() );
    for ( std::size_t i = 0; i < order.size(); ++i )
    {
      order[i] = i;
    }
    std::stable_sort( order.begin(), order.end(),
                      [this]( auto x, auto y ) { return cubes_[x].literals() > cubes_[y].literals(); } );

    for ( auto i : order )
    {
      auto& c = cubes_[i];
      // per-output redundancy, then whole-cube removal when no output is left
      for ( unsigned j = 0; j < m_; ++j )
      {
        if ( !( ( c.outputs >> j ) & 1u ) )
        {
          continue;
        }
        bool needed = false;
        c.for_each_minterm( n_, [&]( std::uint64_t mt ) {
          if ( !needed && f_.is_on( j, mt ) && count( mt, j ) < 2u )
          {
            needed = true;
          }
        } );
        if ( !needed )
        {
          c.for_each_minterm( n_, [&]( std::uint64_t mt ) {
            if ( f_.is_on( j, mt ) )
            {
              --count( mt, j );
            }
          } );
          c.outputs &= ~( std::uint64_t{ 1 } << j );
        }
      }
    }
    std::erase_if( cubes_, []( cube const& c ) { return c.outputs == 0u; } );
  }

  void reduce()
  {
    recount();
    for ( auto& c : cubes_ )
    {
      std::uint32_t and_bits = ~std::uint32_t{ 0 }, or_bits = 0u;
      std::uint64_t outs = 0u;
      for_each_on_pair( c, [&]( std::uint64_t mt, unsigned j ) {
        if ( count( mt, j ) == 1u )
        {
          and_bits &= static_cast<std::uint32_t>( mt );
          or_bits |= static_cast<std::uint32_t>( mt );
          outs |= std::uint64_t{ 1 } << j;
        }
      } );
      if ( outs == 0u )
      {
        continue; // fully shared; IRREDUNDANT keeps such cubes only when needed elsewhere
      }
      for_each_on_pair( c, [&]( std::uint64_t mt, unsigned j ) { --count( mt, j ); } );
      auto const full = static_cast<std::uint32_t>( wl_mask( n_ ) );
      // supercube: bits where all unique minterms agree stay fixed
      c.care = ( and_bits | ~or_bits ) & full;
      c.value = and_bits & c.care;
      c.outputs = outs;
      for_each_on_pair( c, [&]( std::uint64_t mt, unsigned j ) { ++count( mt, j ); } );
    }
  }

  multi_output_function const& f_;
  unsigned n_;
  unsigned m_;
  std::vector<cube> cubes_;
  std::vector<std::uint32_t> count_;
};

} // namespace detail

/*! \brief Heuristic minimization of f; at most `max_iters` EXPAND/IRREDUNDANT/REDUCE rounds. */
inline std::pair<cover, minimize_stats> minimize_heuristic( multi_output_function const& f, unsigned max_iters = 16u )
{
  if ( f.num_inputs() > max_heuristic_inputs )
  {
    throw capacity_error( "heuristic minimization is limited to " + std::to_string( max_heuristic_inputs ) +
                          " input bits" );
  }
  if ( max_iters == 0u )
  {
    throw parameter_error( "max_iters must be positive" );
  }
  auto [c, iterations] = detail::espresso_loop( f ).run( max_iters );
  return { c, stats_of( c, iterations, false ) };
}

inline std::pair<cover, minimize_stats> minimize_heuristic( truth_table const& tt, unsigned max_iters = 16u )
{
  if ( tt.num_inputs() > max_heuristic_inputs )
  {
    throw capacity_error( "heuristic minimization is limited to " + std::to_string( max_heuristic_inputs ) +
                          " input bits" );
  }
  return minimize_heuristic( multi_output_function::from_truth_table( tt ), max_iters );
}

} // namespace ppc
