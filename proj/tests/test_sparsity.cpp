#include <gtest/gtest.h>

#include <random>

#include <ppc/sparsity.hpp>

using namespace ppc;

TEST( preprocessing, down_sample_clears_low_bits )
{
  auto const p = preprocessing::down_sample( 4u );
  EXPECT_EQ( apply( p, 13u ), 12u );
  EXPECT_EQ( apply( p, 12u ), 12u );
  EXPECT_EQ( apply( p, 3u ), 0u );
  EXPECT_THROW( preprocessing::down_sample( 3u ), parameter_error );
}

TEST( preprocessing, threshold_maps_small_values )
{
  auto const p = preprocessing::threshold( 5u, 6u );
  EXPECT_EQ( apply( p, 4u ), 6u );
  EXPECT_EQ( apply( p, 0u ), 6u );
  EXPECT_EQ( apply( p, 5u ), 5u );
  EXPECT_EQ( apply( p, 7u ), 7u );
}

TEST( preprocessing, threshold_rejects_signed_operands )
{
  auto const p = preprocessing::threshold( 5u, 6u );
  EXPECT_THROW( p.validate( 8u, interpretation::twos_complement ), unsupported_preprocessing_error );
}

TEST( preprocessing, chain_applies_in_order )
{
  auto const c = parse_chain( "th:48:48+ds:16" );
  ASSERT_EQ( c.steps.size(), 2u );
  EXPECT_EQ( chain_apply( c, 10u ), 48u );
  EXPECT_EQ( chain_apply( c, 100u ), 96u );
  auto const r = parse_chain( "ds:16+th:48:48" );
  EXPECT_EQ( chain_apply( r, 10u ), 48u );
  EXPECT_EQ( chain_apply( r, 40u ), 48u );
  EXPECT_EQ( c.to_string(), "th:48:48+ds:16" );
}

TEST( preprocessing, parse_errors )
{
  EXPECT_THROW( parse_chain( "ds:3" ), parameter_error );
  EXPECT_THROW( parse_chain( "xx:1" ), parameter_error );
  EXPECT_THROW( parse_chain( "th:4" ), parameter_error );
  EXPECT_TRUE( parse_chain( "id" ).is_identity() );
}

TEST( value_set, reachable_set_matches_enumeration )
{
  std::mt19937 rng( 7u );
  for ( int trial = 0; trial < 200; ++trial )
  {
    unsigned const wl = 2u + rng() % 7u;
    preprocess_chain c;
    for ( unsigned k = rng() % 3u; k > 0u; --k )
    {
      if ( rng() & 1u )
        c.steps.push_back( preprocessing::down_sample( 1u << ( rng() % ( wl + 1u ) ) ) );
      else
        c.steps.push_back( preprocessing::threshold( rng() % ( 1u << wl ), rng() % ( 1u << wl ) ) );
    }
    std::int64_t const lo = rng() % ( 1u << wl );
    std::int64_t const hi = lo + rng() % ( ( 1u << wl ) - lo );
    natural_range const nat{ lo, hi };
    std::vector<bool> expect( 1u << wl, false );
    for ( std::int64_t v = lo; v <= hi; ++v )
      expect[chain_apply( c, static_cast<encoding>( v ) )] = true;
    auto const r = reachable_set( wl, interpretation::unsigned_int, nat, c );
    EXPECT_EQ( r.mask(), expect ) << c.to_string() << " wl " << wl;
  }
}

TEST( value_set, ds_sizes )
{
  EXPECT_EQ( reachable_set( 8u, parse_chain( "ds:16" ) ).size(), 16u );
  EXPECT_EQ( reachable_set( 8u, parse_chain( "th:48:48" ) ).size(), 256u - 48u );
  EXPECT_EQ( reachable_set( 8u, parse_chain( "ds:16" ) ).common_zero_low_bits(), 4u );
}

TEST( value_set, projection )
{
  auto const s = value_set::from_values( 8u, { 0x12u, 0x34u, 0x1fu } );
  EXPECT_EQ( s.project( 4u, 4u ).members(), ( std::vector<encoding>{ 1u, 3u } ) );
  EXPECT_EQ( s.project( 0u, 4u ).members(), ( std::vector<encoding>{ 2u, 4u, 15u } ) );
}

TEST( natural_range, parse_and_validate )
{
  auto const r = parse_natural_range( "0:159" );
  EXPECT_EQ( r.lo, 0 );
  EXPECT_EQ( r.hi, 159 );
  EXPECT_TRUE( r.contains( 159 ) );
  EXPECT_FALSE( r.contains( 160 ) );
  EXPECT_THROW( parse_natural_range( "9:3" ).validate( 8u ), parameter_error );
  EXPECT_THROW( parse_natural_range( "0:300" ).validate( 8u ), parameter_error );
}

TEST( histogram, support_and_normalization )
{
  std::vector<encoding> v{ 1u, 1u, 3u, 200u };
  auto const h = histogram_of( v, 8u );
  EXPECT_EQ( h.total(), 4u );
  EXPECT_EQ( h.support().members(), ( std::vector<encoding>{ 1u, 3u, 200u } ) );
  EXPECT_DOUBLE_EQ( h.normalized()[1], 0.5 );
  histogram g( 8u );
  EXPECT_THROW( g.add( 256u ), data_error );
}
