#include <gtest/gtest.h>

#include <vector>

#include <ppc/fixed_point.hpp>

using namespace ppc;

TEST( fixed_word, range_checks )
{
  EXPECT_EQ( fixed_word::s( -128, 8u ).bits, 0x80u );
  EXPECT_EQ( fixed_word::s( -1, 8u ).value(), -1 );
  EXPECT_THROW( fixed_word::u( 256, 8u ), range_error );
  EXPECT_THROW( fixed_word::s( 128, 8u ), range_error );
}

TEST( ppc_block, adder_applies_preprocessing )
{
  auto const b = ppc_block::make( block_spec::adder( 4u, 4u ), parse_chain( "ds:2" ), parse_chain( "ds:4" ) );
  auto const r = ppa_eval( b, fixed_word::u( 7, 4u ), fixed_word::u( 7, 4u ) );
  EXPECT_EQ( r.value(), 6 + 4 );
  EXPECT_EQ( r.wl, 5u );
  EXPECT_THROW( ppm_eval( b, fixed_word::u( 1, 4u ), fixed_word::u( 1, 4u ) ), parameter_error );
}

TEST( ppc_block, equals_truth_table_rows )
{
  auto const b = ppc_block::make( block_spec::multiplier( 4u, 4u ), parse_chain( "th:5:6" ), parse_chain( "ds:2" ) );
  auto const tt = b.table();
  for ( encoding x = 0; x < 16u; ++x )
    for ( encoding y = 0; y < 16u; ++y )
    {
      auto const r = b.eval( fixed_word::u( x, 4u ), fixed_word::u( y, 4u ) );
      auto const px = chain_apply( b.chain_a, x ), py = chain_apply( b.chain_b, y );
      EXPECT_EQ( r.value(), static_cast<std::int64_t>( px * py ) );
      EXPECT_EQ( *tt.row( px, py ), r.bits );
    }
}

TEST( ppc_block, strict_natural_range )
{
  auto const spec = mac_multiplier_spec();
  auto const strict = ppc_block::make( spec, {}, {}, natural_range{ 0, 159 } );
  EXPECT_THROW( strict.eval( fixed_word::u( 160, 8u ), fixed_word::s( 1, 8u ) ), range_error );
  EXPECT_EQ( strict.eval( fixed_word::u( 159, 8u ), fixed_word::s( -2, 8u ) ).value(), -318 );
  auto const loose = ppc_block::make( spec, {}, {}, natural_range{ 0, 159 }, std::nullopt, strictness::permissive );
  EXPECT_EQ( loose.eval( fixed_word::u( 200, 8u ), fixed_word::s( -1, 8u ) ).value(), -200 );
}

TEST( mac, threshold_example )
{
  auto const b = ppc_block::make( mac_multiplier_spec(), parse_chain( "th:48:48" ) );
  std::vector<fixed_word> p{ fixed_word::u( 10, 8u ), fixed_word::u( 100, 8u ) };
  std::vector<fixed_word> w{ fixed_word::s( 2, 8u ), fixed_word::s( 1, 8u ) };
  EXPECT_EQ( mac_dotproduct( p, w, b ).value(), 196 );
}

TEST( mac, worst_case_accumulation_fits )
{
  auto const b = ppc_block::make( mac_multiplier_spec(), {}, {}, natural_range{ 0, 159 } );
  std::vector<fixed_word> p( mac_max_terms, fixed_word::u( 159, 8u ) );
  std::vector<fixed_word> lo( mac_max_terms, fixed_word::s( -128, 8u ) ), hi( mac_max_terms, fixed_word::s( 127, 8u ) );
  EXPECT_EQ( mac_dotproduct( p, lo, b ).value(), -159 * 128 * 960 );
  EXPECT_EQ( mac_dotproduct( p, hi, b ).value(), 159 * 127 * 960 );
  std::vector<fixed_word> more( mac_max_terms + 1u, fixed_word::u( 1, 8u ) ), wm( mac_max_terms + 1u, fixed_word::s( 1, 8u ) );
  EXPECT_THROW( mac_dotproduct( more, wm, b ), parameter_error );
}

TEST( mac, accumulator_overflow_is_reported )
{
  auto const b = ppc_block::make( mac_multiplier_spec() );
  auto const near = fixed_word::s( max_value( mac_accumulator_wl, interpretation::twos_complement ) - 10, mac_accumulator_wl );
  EXPECT_THROW( mac_step( near, fixed_word::u( 255, 8u ), fixed_word::s( 127, 8u ), b ), arithmetic_error );
}
