/*!
  \file segmented.hpp
  \brief Literal estimate of a wide block from independently minimized segments
*/

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "../sparsity.hpp"
#include "../truth_table.hpp"
#include "exact.hpp"
#include "heuristic.hpp"

namespace ppc
{

enum class minimize_mode
{
  exact,
  heuristic
};

inline minimize_mode parse_minimize_mode( std::string_view s )
{
  if ( s == "exact" )
  {
    return minimize_mode::exact;
  }
  if ( s == "heuristic" )
  {
    return minimize_mode::heuristic;
  }
  throw parameter_error( "unknown minimization mode '" + std::string( s ) + "' (expected exact or heuristic)" );
}

inline std::pair<cover, minimize_stats> minimize( truth_table const& tt, minimize_mode mode, unsigned max_iters = 16u )
{
  return mode == minimize_mode::exact ? minimize_exact( tt ) : minimize_heuristic( tt, max_iters );
}

/*! \brief Memo of minimization results keyed by block and operand sets; thread-safe. */
class segment_cache
{
public:
  std::optional<minimize_stats> find( std::string const& key ) const
  {
    std::lock_guard lock( mutex_ );
    if ( auto it = entries_.find( key ); it != entries_.end() )
    {
      return it->second;
    }
    return std::nullopt;
  }

  void insert( std::string const& key, minimize_stats const& s )
  {
    std::lock_guard lock( mutex_ );
    entries_.emplace( key, s );
  }

  std::size_t size() const
  {
    std::lock_guard lock( mutex_ );
    return entries_.size();
  }

private:
  mutable std::mutex mutex_;
  std::map<std::string, minimize_stats> entries_;
};

struct segmented_estimate
{
  minimize_stats stats;                 ///< sums over all segments
  std::vector<std::uint64_t> per_segment; ///< literal count of each segment, layout order
  std::size_t distinct_problems{ 0u };
  bool recombination_excluded{ true };  ///< partial-product / carry adders are not counted
};

inline segmented_estimate segmented_literal_estimate( block_spec const& spec, value_set const& reach_a,
                                                      value_set const& reach_b, unsigned segment_wl,
                                                      minimize_mode mode, segment_cache* cache = nullptr )
{
  if ( reach_a.wl() != spec.wl_a || reach_b.wl() != spec.wl_b )
  {
    throw parameter_error( "value set word lengths do not match the block" );
  }
  segment_cache local;
  auto& memo = cache ? *cache : local;

  segmented_estimate est;
  est.stats.exact = mode == minimize_mode::exact;
  std::map<std::string, bool> seen;
  for ( auto const& seg : segment_layout( spec, segment_wl ) )
  {
    auto const ra = segment_field( reach_a, seg.field_a, segment_wl );
    auto const rb = segment_field( reach_b, seg.field_b, segment_wl );
    auto const key = std::string( seg.spec.op == block_op::mul ? "mul" : "add" ) + std::to_string( segment_wl ) + ":" +
                     ( mode == minimize_mode::exact ? "x:" : "h:" ) + ra.to_string() + ":" + rb.to_string();
    seen[key] = true;
    auto s = memo.find( key );
    if ( !s )
    {
      s = minimize( gen_block_tt( seg.spec, ra, rb ), mode ).second;
      memo.insert( key, *s );
    }
    est.per_segment.push_back( s->literals );
    est.stats.literals += s->literals;
    est.stats.cubes += s->cubes;
    est.stats.iterations += s->iterations;
  }
  est.distinct_problems = seen.size();
  return est;
}

} // namespace ppc
