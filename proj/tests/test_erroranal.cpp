#include <gtest/gtest.h>

#include <ppc/error_analysis.hpp>

#include "oracles.hpp"

using namespace ppc;

namespace
{

std::int64_t add( std::int64_t a, std::int64_t b ) { return a + b; }
std::int64_t mul( std::int64_t a, std::int64_t b ) { return a * b; }

void expect_equal( error_stats const& s, oracle::metrics const& o )
{
  EXPECT_EQ( s.pe, o.pe );
  EXPECT_EQ( s.me, o.me );
  EXPECT_EQ( s.mae, o.mae );
}

preprocess_chain ds( unsigned x ) { return x == 1u ? preprocess_chain{} : parse_chain( "ds:" + std::to_string( x ) ); }

} // namespace

TEST( error_oracle, ds_grid_matches_reference )
{
  for ( unsigned wl = 2u; wl <= 6u; ++wl )
    for ( unsigned xa = 1u; xa <= 16u && xa <= ( 1u << wl ); xa <<= 1u )
      for ( unsigned xb = 1u; xb <= 16u && xb <= ( 1u << wl ); xb <<= 1u )
      {
        auto const ra = oracle::ds( xa ), rb = oracle::ds( xb );
        expect_equal( metrics_oracle( block_spec::adder( wl, wl ), ds( xa ), ds( xb ) ), oracle::exhaustive( wl, add, ra, rb ) );
        expect_equal( metrics_oracle( block_spec::multiplier( wl, wl ), ds( xa ), ds( xb ) ),
                      oracle::exhaustive( wl, mul, ra, rb ) );
      }
}

TEST( error_oracle, threshold_matches_reference )
{
  expect_equal( metrics_oracle( block_spec::adder( 3u, 3u ), parse_chain( "th:5:0" ), parse_chain( "th:5:0" ) ),
                oracle::exhaustive( 3u, add, oracle::th( 5, 0 ), oracle::th( 5, 0 ) ) );
  expect_equal( metrics_oracle( block_spec::multiplier( 4u, 4u ), parse_chain( "th:6:3" ), {} ),
                oracle::exhaustive( 4u, mul, oracle::th( 6, 3 ), []( std::int64_t v ) { return v; } ) );
}

TEST( error_oracle, frozen_values )
{
  auto const a = metrics_oracle( block_spec::adder( 4u, 4u ), ds( 2u ), ds( 2u ) );
  EXPECT_EQ( a.pe, rational( 3, 4 ) );
  EXPECT_EQ( a.me, rational( 1 ) );
  EXPECT_EQ( a.mae, rational( 1 ) );
  auto const m = metrics_oracle( block_spec::multiplier( 3u, 3u ), ds( 2u ), ds( 2u ) );
  EXPECT_EQ( m.pe, rational( 5, 8 ) );
  EXPECT_EQ( m.me, rational( 13, 4 ) );
}

TEST( error_oracle, threads_do_not_change_results )
{
  oracle_options o;
  o.threads = 4u;
  auto const s = block_spec::multiplier( 8u, 8u );
  EXPECT_EQ( metrics_oracle( s, ds( 4u ), ds( 8u ), o ), metrics_oracle( s, ds( 4u ), ds( 8u ) ) );
}

TEST( error_oracle, restricted_domain )
{
  oracle_options o;
  o.domain_a = value_set::from_values( 4u, { 1u, 3u } );
  o.domain_b = value_set::from_values( 4u, { 2u } );
  auto const s = metrics_oracle( block_spec::adder( 4u, 4u ), ds( 2u ), {}, o );
  EXPECT_EQ( s.pe, rational( 1 ) );
  EXPECT_EQ( s.me, rational( 1 ) );
  EXPECT_EQ( s.n_pairs, 2u );
}

TEST( closed_forms, equal_oracle_on_grid )
{
  for ( unsigned wl = 2u; wl <= 8u; ++wl )
    for ( unsigned xa = 1u; xa <= 16u && xa <= ( 1u << wl ); xa <<= 1u )
      for ( unsigned xb = 1u; xb <= 16u && xb <= ( 1u << wl ); xb <<= 1u )
      {
        EXPECT_EQ( metrics_closed_ds_add( wl, xa, xb ), metrics_oracle( block_spec::adder( wl, wl ), ds( xa ), ds( xb ) ) );
        EXPECT_EQ( metrics_closed_ds_mul( wl, xa, xb ),
                   metrics_oracle( block_spec::multiplier( wl, wl ), ds( xa ), ds( xb ) ) );
      }
}

TEST( closed_forms, wider_words )
{
  EXPECT_EQ( metrics_closed_ds_add( 10u, 8u, 2u ),
             metrics_oracle( block_spec::adder( 10u, 10u ), ds( 8u ), ds( 2u ) ) );
  EXPECT_EQ( metrics_closed_ds_mul( 10u, 4u, 32u ),
             metrics_oracle( block_spec::multiplier( 10u, 10u ), ds( 4u ), ds( 32u ) ) );
  auto const s = metrics_closed_ds_mul( 24u, 16u, 16u );
  EXPECT_GT( s.pe, rational( 0 ) );
  EXPECT_LT( s.pe, rational( 1 ) );
  EXPECT_THROW( metrics_closed_ds_add( 4u, 3u, 2u ), parameter_error );
}

TEST( published_formulas, ds_mul_agrees )
{
  auto const r = published_formula_report( 3u, 2u, 0u, formula_family::ds_mul );
  ASSERT_FALSE( r.rows.empty() );
  EXPECT_EQ( r.rows[0].name, "pe (published)" );
  EXPECT_DOUBLE_EQ( r.rows[0].published, 0.625 );
  EXPECT_TRUE( r.rows[0].agree );
}

TEST( published_formulas, ds_add_mean_disagrees )
{
  auto const r = published_formula_report( 4u, 2u, 0u, formula_family::ds_add );
  bool flagged = false;
  for ( auto const& row : r.rows )
    if ( row.name == "me (published)" )
      flagged = !row.agree;
  EXPECT_TRUE( flagged );
  EXPECT_EQ( r.oracle.me, rational( 1 ) );
}

TEST( published_formulas, threshold_needs_m )
{
  EXPECT_THROW( published_formula_report( 3u, 5u, 0u, formula_family::th_add ), parameter_error );
  auto const r = published_formula_report( 3u, 5u, 0u, formula_family::th_add, 1.0 );
  EXPECT_FALSE( r.rows.empty() );
}
