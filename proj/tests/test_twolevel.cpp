#include <gtest/gtest.h>

#include <random>
#include <set>

#include <ppc/twolevel/exact.hpp>
#include <ppc/twolevel/heuristic.hpp>
#include <ppc/twolevel/pla.hpp>
#include <ppc/twolevel/segmented.hpp>
#include <ppc/twolevel/verify.hpp>

#include "oracles.hpp"

using namespace ppc;

#ifndef PPC_FIXTURE_DIR
#define PPC_FIXTURE_DIR "tests/fixtures"
#endif

namespace
{

multi_output_function to_library( oracle::function const& f )
{
  multi_output_function g( f.n, f.m );
  for ( unsigned j = 0; j < f.m; ++j )
    for ( unsigned mt = 0; mt < ( 1u << f.n ); ++mt )
    {
      if ( f.dc[j][mt] )
        g.set_dc( j, mt );
      else if ( f.on[j][mt] )
        g.set_on( j, mt );
    }
  return g;
}

oracle::function random_function( std::mt19937& rng, unsigned n, unsigned m, unsigned dc_percent )
{
  oracle::function f;
  f.n = n;
  f.m = m;
  f.on.assign( m, std::vector<bool>( 1u << n ) );
  f.dc.assign( m, std::vector<bool>( 1u << n ) );
  for ( unsigned j = 0; j < m; ++j )
    for ( unsigned mt = 0; mt < ( 1u << n ); ++mt )
    {
      if ( rng() % 100u < dc_percent )
        f.dc[j][mt] = true;
      else
        f.on[j][mt] = rng() & 1u;
    }
  return f;
}

cover random_cover( std::mt19937& rng, unsigned n, unsigned m, unsigned k )
{
  cover c;
  c.num_inputs = n;
  c.num_outputs = m;
  std::set<std::string> seen;
  while ( c.cubes.size() < k )
  {
    cube q;
    for ( unsigned i = 0; i < n; ++i )
    {
      auto const r = rng() % 3u;
      if ( r != 2u )
      {
        q.care |= 1u << i;
        q.value |= r << i;
      }
    }
    q.outputs = rng() & ( ( std::uint64_t{ 1 } << m ) - 1u );
    if ( q.outputs == 0u || !seen.insert( q.to_string( n, m ) ).second )
      continue;
    c.cubes.push_back( q );
  }
  return c;
}

} // namespace

TEST( exact, multiplier_2x2_is_minimum )
{
  auto const f = oracle::multiplier( 2u, 2u, []( unsigned, unsigned ) { return true; } );
  auto const expected = oracle::min_literals( f );
  EXPECT_EQ( expected, 22u );
  auto const [c, s] = minimize_exact( precise_tt( block_spec::multiplier( 2u, 2u ) ) );
  EXPECT_EQ( s.literals, expected );
  EXPECT_EQ( s.cubes, 7u );
  EXPECT_TRUE( s.exact );
  EXPECT_TRUE( verify_cover( c, precise_tt( block_spec::multiplier( 2u, 2u ) ) ).pass );
}

TEST( exact, frozen_multiplier_counts )
{
  auto lits = []( unsigned wl, std::string const& pre ) {
    auto const s = block_spec::multiplier( wl, wl );
    auto const r = reachable_set( wl, parse_chain( pre ) );
    return minimize_exact( truth_table( s, r, r ) ).second.literals;
  };
  EXPECT_EQ( lits( 3u, "id" ), 132u );
  EXPECT_EQ( lits( 4u, "ds:2" ), 132u );
  EXPECT_EQ( lits( 4u, "ds:4" ), 22u );
}

TEST( exact, matches_brute_force_on_small_functions )
{
  std::mt19937 rng( 11u );
  for ( int trial = 0; trial < 60; ++trial )
  {
    auto const n = 2u + rng() % 2u, m = 1u + rng() % 2u;
    auto const f = random_function( rng, n, m, 30u );
    auto const g = to_library( f );
    auto const [c, s] = minimize_exact( g );
    EXPECT_TRUE( verify_cover( c, g ).pass );
    EXPECT_EQ( s.literals, oracle::min_literals( f ) ) << "trial " << trial;
  }
}

TEST( heuristic, random_tables_are_sound )
{
  std::mt19937 rng( 1234u );
  for ( int trial = 0; trial < 200; ++trial )
  {
    auto const n = 2u + rng() % 5u, m = 1u + rng() % 3u;
    auto const g = to_library( random_function( rng, n, m, rng() % 60u ) );
    auto const [h, hs] = minimize_heuristic( g );
    auto const [e, es] = minimize_exact( g );
    EXPECT_TRUE( verify_cover( h, g ).pass );
    EXPECT_TRUE( verify_cover( e, g ).pass );
    EXPECT_LE( es.literals, hs.literals );
  }
}

TEST( heuristic, larger_block_verifies )
{
  auto const s = block_spec::multiplier( 5u, 5u );
  auto const r = reachable_set( 5u, parse_chain( "ds:2" ) );
  auto const tt = truth_table( s, r, r );
  auto const [c, st] = minimize_heuristic( tt );
  EXPECT_TRUE( verify_cover( c, tt ).pass );
  EXPECT_FALSE( st.exact );
  EXPECT_THROW( minimize_heuristic( tt, 0u ), parameter_error );
}

TEST( verify, reports_violations )
{
  auto const tt = precise_tt( block_spec::adder( 2u, 2u ) );
  auto c = minimize_exact( tt ).first;
  c.cubes.pop_back();
  auto const r = verify_cover( c, tt );
  EXPECT_FALSE( r.pass );
  EXPECT_GT( r.violation_count, 0u );
  cover all;
  all.num_inputs = 4u;
  all.num_outputs = 3u;
  all.cubes.push_back( cube{ 0u, 0u, 7u } );
  EXPECT_FALSE( verify_cover( all, tt ).pass );
}

TEST( pla, round_trip_random_covers )
{
  std::mt19937 rng( 99u );
  for ( int trial = 0; trial < 100; ++trial )
  {
    auto const n = 3u + rng() % 8u, m = 1u + rng() % 6u;
    auto const c = random_cover( rng, n, m, 1u + rng() % 12u );
    auto const text = pla_write( c );
    auto const back = pla_read( text ).to_cover();
    EXPECT_TRUE( back.same_cubes( c ) ) << text;
    EXPECT_EQ( pla_write( back ), text );
  }
}

TEST( pla, external_espresso_cover_verifies )
{
  auto const doc = pla_read_file( PPC_FIXTURE_DIR "/mul2x2_espresso.pla" );
  EXPECT_EQ( doc.num_inputs, 4u );
  EXPECT_EQ( doc.num_outputs, 4u );
  auto const c = doc.to_cover();
  EXPECT_EQ( c.cube_count(), 7u );
  EXPECT_EQ( c.literal_count(), 22u );
  EXPECT_TRUE( verify_cover( c, precise_tt( block_spec::multiplier( 2u, 2u ) ) ).pass );
}

TEST( pla, table_round_trip_preserves_dont_cares )
{
  auto const s = block_spec::multiplier( 2u, 3u );
  auto const r = reachable_set( 2u, parse_chain( "ds:2" ) ), q = reachable_set( 3u, parse_chain( "ds:2" ) );
  auto const tt = truth_table( s, r, q );
  auto const f = pla_read( pla_write( tt ) ).to_function();
  auto const g = multi_output_function::from_truth_table( tt );
  for ( unsigned j = 0; j < 5u; ++j )
    for ( std::uint64_t mt = 0; mt < 32u; ++mt )
    {
      EXPECT_EQ( f.is_on( j, mt ), g.is_on( j, mt ) );
      EXPECT_EQ( f.is_dc( j, mt ), g.is_dc( j, mt ) );
    }
}

TEST( pla, malformed_input_reports_line )
{
  auto line_of = []( std::string const& text ) -> std::size_t {
    try
    {
      pla_read( text );
    }
    catch ( parse_error const& e )
    {
      return e.line();
    }
    return 0u;
  };
  EXPECT_EQ( line_of( ".i 2\n.o 1\n0x 1\n.e\n" ), 3u );
  EXPECT_EQ( line_of( ".i 2\n.o 1\n01 11\n" ), 3u );
  EXPECT_EQ( line_of( "01 1\n" ), 1u );
  EXPECT_EQ( line_of( ".i 2\n.o 1\n.p 2\n01 1\n.e\n" ), 5u );
  EXPECT_EQ( line_of( ".i 2\n.o 1\n01 1\n.e\n11 1\n" ), 5u );
  EXPECT_EQ( line_of( ".i 2\n.o 1\n.type fr\n" ), 3u );
}

TEST( segmented, estimate_of_ds16_multiplier )
{
  auto const s = block_spec::multiplier( 8u, 8u );
  auto const r = reachable_set( 8u, parse_chain( "ds:16" ) );
  segment_cache cache;
  auto const e = segmented_literal_estimate( s, r, r, 4u, minimize_mode::exact, &cache );
  // only the high x high sub-multiplier is non-constant: the precise 4x4 (701 literals)
  EXPECT_EQ( e.stats.literals, 701u );
  EXPECT_EQ( e.per_segment.size(), 4u );
  EXPECT_TRUE( e.recombination_excluded );
}
