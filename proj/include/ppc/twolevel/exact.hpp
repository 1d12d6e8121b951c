/*!
  \file exact.hpp
  \brief Exact two-level minimization: multi-output prime generation and
         minimum-literal covering by branch and bound

  Cost of a cover is its input literal count; among covers of equal literal
  count, fewer cubes win. Remaining ties are broken by a fixed search order
  (columns sorted by cost, then by prime index), so the result is
  deterministic.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cover.hpp"

namespace ppc
{

inline constexpr unsigned max_exact_inputs = 12u;

/*! \brief Multi-output prime implicant with the outputs it is useful for. */
struct prime_implicant
{
  cube c;                  ///< outputs = all outputs the input cube is an implicant of
  std::uint64_t useful{};  ///< subset of outputs where it covers at least one ON minterm
};

/*! \brief All multi-output primes of f that cover at least one ON minterm.
 *
 * A cube C is a prime when no single-literal expansion keeps the set of
 * outputs for which C is an implicant of ON u DC.
 */
inline std::vector<prime_implicant> generate_primes( multi_output_function const& f )
{
  auto const n = f.num_inputs();
  if ( n > max_exact_inputs )
  {
    throw capacity_error( "prime generation is limited to " + std::to_string( max_exact_inputs ) + " inputs" );
  }
  std::vector<std::uint64_t> pow3( n + 1u, 1u );
  for ( unsigned b = 1; b <= n; ++b )
  {
    pow3[b] = pow3[b - 1u] * 3u;
  }
  auto const total = pow3[n];

  // per ternary cube: outputs it is an implicant of, outputs it touches the ON set of
  std::vector<std::uint64_t> implicant( total ), touches_on( total );
  std::vector<std::uint8_t> digit( n, 0u );
  std::vector<prime_implicant> primes;

  for ( std::uint64_t idx = 0u; idx < total; ++idx )
  {
    if ( idx != 0u )
    {
      for ( unsigned b = 0; b < n; ++b )
      {
        if ( ++digit[b] < 3u )
        {
          break;
        }
        digit[b] = 0u;
      }
    }

    unsigned first_free = n;
    std::uint64_t mt = 0u;
    std::uint32_t care = 0u, value = 0u;
    for ( unsigned b = 0; b < n; ++b )
    {
      if ( digit[b] == 2u )
      {
        first_free = std::min( first_free, b );
      }
      else
      {
        care |= 1u << b;
        value |= std::uint32_t{ digit[b] } << b;
        mt |= std::uint64_t{ digit[b] } << b;
      }
    }

    if ( first_free == n )
    {
      implicant[idx] = f.care_free_mask( mt );
      touches_on[idx] = f.on_mask( mt );
    }
    else
    {
      auto const lo = idx - 2u * pow3[first_free];
      auto const hi = idx - pow3[first_free];
      implicant[idx] = implicant[lo] & implicant[hi];
      touches_on[idx] = touches_on[lo] | touches_on[hi];
    }
  }

  // second pass: primality needs the raised cubes, which have larger indices
  std::fill( digit.begin(), digit.end(), 0u );
  for ( std::uint64_t idx = 0u; idx < total; ++idx )
  {
    if ( idx != 0u )
    {
      for ( unsigned b = 0; b < n; ++b )
      {
        if ( ++digit[b] < 3u )
        {
          break;
        }
        digit[b] = 0u;
      }
    }
    auto const outs = implicant[idx];
    auto const useful = outs & touches_on[idx];
    if ( useful == 0u )
    {
      continue;
    }
    bool prime = true;
    std::uint32_t care = 0u, value = 0u;
    for ( unsigned b = 0; b < n && prime; ++b )
    {
      if ( digit[b] != 2u )
      {
        care |= 1u << b;
        value |= std::uint32_t{ digit[b] } << b;
        prime = implicant[idx + ( 2u - digit[b] ) * pow3[b]] != outs;
      }
    }
    if ( prime )
    {
      primes.push_back( { cube{ care, value, outs }, useful } );
    }
  }
  return primes;
}

namespace detail
{

/*! \brief Weighted unate covering by branch and bound with Lagrangian lower bounds. */
class covering_solver
{
public:
  using bitset = boost::dynamic_bitset<std::uint64_t>;

  covering_solver( std::vector<bitset> col_rows, std::vector<std::uint64_t> costs, std::uint64_t max_nodes )
      : num_rows_( col_rows.empty() ? 0u : col_rows.front().size() ), col_rows_( std::move( col_rows ) ),
        costs_( std::move( costs ) ), max_nodes_( max_nodes )
  {
    row_cols_.assign( num_rows_, bitset( col_rows_.size() ) );
    col_list_.resize( col_rows_.size() );
    for ( std::size_t c = 0; c < col_rows_.size(); ++c )
    {
      for ( auto r = col_rows_[c].find_first(); r != bitset::npos; r = col_rows_[c].find_next( r ) )
      {
        row_cols_[r].set( c );
        col_list_[c].push_back( static_cast<std::uint32_t>( r ) );
      }
    }
  }

  /*! \brief Minimum-cost set of columns covering every row. */
  std::vector<std::size_t> solve()
  {
    state root{ bitset( num_rows_ ), bitset( col_rows_.size() ), {}, 0u };
    root.rows.set();
    root.cols.set();
    best_ = greedy( root, nullptr );
    best_cost_ = cost_of( best_ );
    std::vector<double> u( num_rows_, 0.0 );
    search( std::move( root ), u, true );
    std::sort( best_.begin(), best_.end() );
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

private:
  struct state
  {
    bitset rows; ///< rows still to cover
    bitset cols; ///< columns still available
    std::vector<std::size_t> chosen;
    std::uint64_t cost;
  };

  std::uint64_t cost_of( std::vector<std::size_t> const& cols ) const
  {
    std::uint64_t c = 0u;
    for ( auto i : cols )
    {
      c += costs_[i];
    }
    return c;
  }

  void select( state& s, std::size_t c ) const
  {
    s.chosen.push_back( c );
    s.cost += costs_[c];
    s.rows -= col_rows_[c];
    s.cols.reset( c );
  }

  /*! \brief Greedy completion of s (cost per newly covered row, optionally on
   *         Lagrangian-adjusted costs), then removal of redundant columns. */
  std::vector<std::size_t> greedy( state s, std::vector<double> const* u ) const
  {
    while ( s.rows.any() )
    {
      std::size_t best = bitset::npos;
      double best_score = std::numeric_limits<double>::max();
      for ( auto c = s.cols.find_first(); c != bitset::npos; c = s.cols.find_next( c ) )
      {
        std::size_t gain = 0u;
        double dual = 0.0;
        for ( auto r : col_list_[c] )
        {
          if ( s.rows.test( r ) )
          {
            ++gain;
            dual += u ? ( *u )[r] : 0.0;
          }
        }
        if ( gain == 0u )
        {
          continue;
        }
        auto const weight = u ? std::max( static_cast<double>( costs_[c] ) - dual, 1e-9 ) : static_cast<double>( costs_[c] );
        auto const score = weight / static_cast<double>( gain );
        if ( score < best_score )
        {
          best_score = score;
          best = c;
        }
      }
      if ( best == bitset::npos )
      {
        throw error( "covering problem is infeasible" );
      }
      select( s, best );
    }

    auto chosen = s.chosen;
    std::vector<std::uint32_t> times( num_rows_, 0u );
    for ( auto c : chosen )
    {
      for ( auto r : col_list_[c] )
      {
        ++times[r];
      }
    }
    std::vector<std::size_t> order( chosen.size() );
    std::iota( order.begin(), order.end(), std::size_t{ 0 } );
    std::sort( order.begin(), order.end(), [&]( auto x, auto y ) {
      return costs_[chosen[x]] != costs_[chosen[y]] ? costs_[chosen[x]] > costs_[chosen[y]] : chosen[x] > chosen[y];
    } );
    std::vector<bool> keep( chosen.size(), true );
    for ( auto i : order )
    {
      auto const& rows = col_list_[chosen[i]];
      if ( std::all_of( rows.begin(), rows.end(), [&]( auto r ) { return times[r] >= 2u; } ) )
      {
        keep[i] = false;
        for ( auto r : rows )
        {
          --times[r];
        }
      }
    }
    std::vector<std::size_t> out;
    for ( std::size_t i = 0; i < chosen.size(); ++i )
    {
      if ( keep[i] )
      {
        out.push_back( chosen[i] );
      }
    }
    return out;
  }

  /*! \brief Essential columns, column dominance, row dominance; false if infeasible. */
  bool reduce( state& s ) const
  {
    bool changed = true;
    while ( changed )
    {
      changed = false;

      for ( auto r = s.rows.find_first(); r != bitset::npos; r = s.rows.find_next( r ) )
      {
        auto const avail = row_cols_[r] & s.cols;
        auto const cnt = avail.count();
        if ( cnt == 0u )
        {
          return false;
        }
        if ( cnt == 1u )
        {
          select( s, avail.find_first() );
          changed = true;
        }
      }
      if ( s.rows.none() )
      {
        return true;
      }

      // column dominance: a column covering a subset of another's rows at no lower cost
      std::vector<std::size_t> cols;
      std::vector<bitset> rows_of;
      for ( auto c = s.cols.find_first(); c != bitset::npos; c = s.cols.find_next( c ) )
      {
        auto rc = col_rows_[c] & s.rows;
        if ( rc.none() )
        {
          s.cols.reset( c );
          continue;
        }
        cols.push_back( c );
        rows_of.push_back( std::move( rc ) );
      }
      std::vector<bool> removed( cols.size(), false );
      for ( std::size_t i = 0; i < cols.size(); ++i )
      {
        for ( std::size_t k = 0; k < cols.size() && !removed[i]; ++k )
        {
          if ( k == i || removed[k] || costs_[cols[k]] > costs_[cols[i]] )
          {
            continue;
          }
          if ( rows_of[i].is_subset_of( rows_of[k] ) &&
               ( costs_[cols[k]] < costs_[cols[i]] || rows_of[i] != rows_of[k] || k < i ) )
          {
            removed[i] = true;
            s.cols.reset( cols[i] );
            changed = true;
          }
        }
      }

      // row dominance: a row whose columns include another row's columns is implied
      std::vector<std::size_t> rows;
      std::vector<bitset> cols_of;
      for ( auto r = s.rows.find_first(); r != bitset::npos; r = s.rows.find_next( r ) )
      {
        rows.push_back( r );
        cols_of.push_back( row_cols_[r] & s.cols );
      }
      std::vector<bool> dropped( rows.size(), false );
      for ( std::size_t i = 0; i < rows.size(); ++i )
      {
        for ( std::size_t k = 0; k < rows.size() && !dropped[i]; ++k )
        {
          if ( k == i || dropped[k] )
          {
            continue;
          }
          if ( cols_of[k].is_subset_of( cols_of[i] ) && ( cols_of[k] != cols_of[i] || k < i ) )
          {
            dropped[i] = true;
            s.rows.reset( rows[i] );
            changed = true;
          }
        }
      }
    }
    return true;
  }

  /*! \brief Subgradient optimization of the Lagrangian dual of the remaining
   *         problem; returns the best bound and leaves its multipliers in u. */
  double lagrangian_bound( state const& s, std::vector<double>& u, unsigned iterations ) const
  {
    std::vector<std::uint32_t> rows;
    for ( auto r = s.rows.find_first(); r != bitset::npos; r = s.rows.find_next( r ) )
    {
      rows.push_back( static_cast<std::uint32_t>( r ) );
    }
    std::vector<std::size_t> cols;
    std::vector<std::vector<std::uint32_t>> lists;
    for ( auto c = s.cols.find_first(); c != bitset::npos; c = s.cols.find_next( c ) )
    {
      std::vector<std::uint32_t> l;
      for ( auto r : col_list_[c] )
      {
        if ( s.rows.test( r ) )
        {
          l.push_back( r );
        }
      }
      cols.push_back( c );
      lists.push_back( std::move( l ) );
    }

    auto const target = static_cast<double>( best_cost_ - s.cost );
    std::vector<double> best_u = u;
    double best_bound = 0.0;
    double lambda = 2.0;
    unsigned stall = 0u;
    std::vector<double> g( num_rows_, 0.0 );

    for ( unsigned it = 0; it < iterations; ++it )
    {
      double bound = 0.0;
      for ( auto r : rows )
      {
        bound += u[r];
        g[r] = 1.0;
      }
      for ( std::size_t i = 0; i < cols.size(); ++i )
      {
        double rc = static_cast<double>( costs_[cols[i]] );
        for ( auto r : lists[i] )
        {
          rc -= u[r];
        }
        if ( rc < 0.0 )
        {
          bound += rc;
          for ( auto r : lists[i] )
          {
            g[r] -= 1.0;
          }
        }
      }
      if ( bound > best_bound + 1e-9 )
      {
        best_bound = bound;
        best_u = u;
        stall = 0u;
      }
      else if ( ++stall >= 8u )
      {
        lambda *= 0.5;
        stall = 0u;
      }
      if ( best_bound >= target - 1e-9 || lambda < 1e-4 )
      {
        break;
      }
      double norm = 0.0;
      for ( auto r : rows )
      {
        // multipliers at zero with a negative subgradient stay at zero
        if ( u[r] <= 0.0 && g[r] < 0.0 )
        {
          g[r] = 0.0;
        }
        norm += g[r] * g[r];
      }
      if ( norm == 0.0 )
      {
        break; // the relaxed solution is a cover
      }
      auto const step = lambda * ( 1.05 * target - bound ) / norm;
      for ( auto r : rows )
      {
        u[r] = std::max( 0.0, u[r] + step * g[r] );
      }
    }
    u = best_u;
    return best_bound;
  }

  double reduced_cost( std::size_t c, state const& s, std::vector<double> const& u ) const
  {
    double rc = static_cast<double>( costs_[c] );
    for ( auto r : col_list_[c] )
    {
      if ( s.rows.test( r ) )
      {
        rc -= u[r];
      }
    }
    return rc;
  }

  void search( state s, std::vector<double> u, bool root )
  {
    if ( ++nodes_ > max_nodes_ )
    {
      throw capacity_error( "exact covering exceeded its node limit; use heuristic mode" );
    }
    if ( !reduce( s ) || s.cost >= best_cost_ )
    {
      return;
    }
    if ( s.rows.none() )
    {
      best_cost_ = s.cost;
      best_ = s.chosen;
      return;
    }

    auto const bound = lagrangian_bound( s, u, root ? 2000u : 150u );
    auto const needed = std::ceil( bound - 1e-6 );
    if ( static_cast<double>( s.cost ) + needed >= static_cast<double>( best_cost_ ) )
    {
      return;
    }

    // Lagrangian greedy may improve the incumbent
    if ( auto const cand = greedy( s, &u ); cost_of( cand ) < best_cost_ )
    {
      best_cost_ = cost_of( cand );
      best_ = cand;
      if ( static_cast<double>( s.cost ) + needed >= static_cast<double>( best_cost_ ) )
      {
        return;
      }
    }

    // reduced-cost fixing: columns that cannot be in any better solution
    bool fixed = false;
    for ( auto c = s.cols.find_first(); c != bitset::npos; c = s.cols.find_next( c ) )
    {
      auto const rc = reduced_cost( c, s, u );
      if ( rc > 0.0 && static_cast<double>( s.cost ) + bound + rc >= static_cast<double>( best_cost_ ) - 1e-6 )
      {
        s.cols.reset( c );
        fixed = true;
      }
    }
    if ( fixed )
    {
      if ( !reduce( s ) || s.cost >= best_cost_ )
      {
        return;
      }
      if ( s.rows.none() )
      {
        best_cost_ = s.cost;
        best_ = s.chosen;
        return;
      }
    }

    // branch on the row with the fewest candidate columns
    std::size_t branch_row = bitset::npos, fewest = std::numeric_limits<std::size_t>::max();
    for ( auto r = s.rows.find_first(); r != bitset::npos; r = s.rows.find_next( r ) )
    {
      auto const cnt = ( row_cols_[r] & s.cols ).count();
      if ( cnt < fewest )
      {
        fewest = cnt;
        branch_row = r;
      }
    }
    auto const avail = row_cols_[branch_row] & s.cols;
    std::vector<std::pair<double, std::size_t>> candidates;
    for ( auto c = avail.find_first(); c != bitset::npos; c = avail.find_next( c ) )
    {
      candidates.emplace_back( reduced_cost( c, s, u ), c );
    }
    std::sort( candidates.begin(), candidates.end() );

    for ( auto const& [rc, c] : candidates )
    {
      state child = s;
      select( child, c );
      search( std::move( child ), u, false );
      s.cols.reset( c ); // later siblings exclude earlier choices
    }
  }

  std::size_t num_rows_;
  std::vector<bitset> col_rows_;
  std::vector<bitset> row_cols_;
  std::vector<std::vector<std::uint32_t>> col_list_;
  std::vector<std::uint64_t> costs_;
  std::uint64_t max_nodes_;
  std::vector<std::size_t> best_;
  std::uint64_t best_cost_{ std::numeric_limits<std::uint64_t>::max() };
  std::uint64_t nodes_{ 0u };
};

} // namespace detail


struct exact_options
{
  /*! branch-and-bound node budget; exceeding it raises capacity_error */
  std::uint64_t max_nodes{ 50'000'000u };
};

/*! \brief Minimum-literal multi-output SOP cover of f (don't-cares free). */
inline std::pair<cover, minimize_stats> minimize_exact( multi_output_function const& f, exact_options const& opts = {} )
{
  if ( f.num_inputs() > max_exact_inputs )
  {
    throw capacity_error( "exact minimization is limited to " + std::to_string( max_exact_inputs ) +
                          " input bits; use heuristic or segmented mode" );
  }
  cover result{ f.num_inputs(), f.num_outputs(), {}, cover_provenance::exact };
  if ( f.on_count() == 0u )
  {
    return { result, stats_of( result, 0u, true ) };
  }

  auto const primes = generate_primes( f );

  // rows: (minterm, output) pairs of the ON sets
  std::vector<std::vector<std::size_t>> row_index( f.num_outputs() );
  std::size_t num_rows = 0u;
  for ( unsigned j = 0; j < f.num_outputs(); ++j )
  {
    row_index[j].assign( f.num_minterms(), std::numeric_limits<std::size_t>::max() );
    for ( std::uint64_t mt = 0u; mt < f.num_minterms(); ++mt )
    {
      if ( f.is_on( j, mt ) )
      {
        row_index[j][mt] = num_rows++;
      }
    }
  }

  // secondary cost term counts cubes; it never outweighs one literal
  auto const cube_weight = static_cast<std::uint64_t>( primes.size() ) + 1u;
  std::vector<detail::covering_solver::bitset> col_rows;
  std::vector<std::uint64_t> costs;
  col_rows.reserve( primes.size() );
  for ( auto const& p : primes )
  {
    detail::covering_solver::bitset rows( num_rows );
    p.c.for_each_minterm( f.num_inputs(), [&]( std::uint64_t mt ) {
      for ( unsigned j = 0; j < f.num_outputs(); ++j )
      {
        if ( ( ( p.useful >> j ) & 1u ) && f.is_on( j, mt ) )
        {
          rows.set( row_index[j][mt] );
        }
      }
    } );
    col_rows.push_back( std::move( rows ) );
    costs.push_back( std::uint64_t{ p.c.literals() } * cube_weight + 1u );
  }

  detail::covering_solver solver( std::move( col_rows ), std::move( costs ), opts.max_nodes );
  for ( auto c : solver.solve() )
  {
    auto cb = primes[c].c;
    cb.outputs = primes[c].useful;
    result.cubes.push_back( cb );
  }
  result.normalize();
  return { result, stats_of( result, solver.nodes(), true ) };
}

inline std::pair<cover, minimize_stats> minimize_exact( truth_table const& tt, exact_options const& opts = {} )
{
  if ( tt.num_inputs() > max_exact_inputs )
  {
    throw capacity_error( "exact minimization is limited to " + std::to_string( max_exact_inputs ) +
                          " input bits; use heuristic or segmented mode" );
  }
  return minimize_exact( multi_output_function::from_truth_table( tt ), opts );
}

} // namespace ppc
