/*!
  \file fixed_point.hpp
  \brief Behavioral models of partially-precise adders, multipliers and the MAC

  A partially-precise block computes the precise operation on preprocessed
  operands. Inputs outside the declared natural ranges are rejected in
  strict mode; permissive mode evaluates them precisely, which is one legal
  assignment of the don't-care rows.
*/

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "errors.hpp"
#include "sparsity.hpp"
#include "truth_table.hpp"

namespace ppc
{

/*! \brief Integer word: encoding in [0, 2^wl) plus its interpretation. */
struct fixed_word
{
  encoding bits{ 0u };
  unsigned wl{ 8u };
  interpretation interp{ interpretation::unsigned_int };

  static fixed_word from_value( std::int64_t v, unsigned wl, interpretation interp = interpretation::unsigned_int )
  {
    if ( wl == 0u || wl > 32u )
    {
      throw parameter_error( "word length must be in 1..32" );
    }
    if ( v < min_value( wl, interp ) || v > max_value( wl, interp ) )
    {
      throw range_error( "value " + std::to_string( v ) + " is not representable in " + std::to_string( wl ) +
                         ( interp == interpretation::unsigned_int ? " unsigned bits" : " two's complement bits" ) );
    }
    return { static_cast<encoding>( encode_value( v, wl ) ), wl, interp };
  }

  static fixed_word u( std::int64_t v, unsigned wl ) { return from_value( v, wl, interpretation::unsigned_int ); }
  static fixed_word s( std::int64_t v, unsigned wl ) { return from_value( v, wl, interpretation::twos_complement ); }

  std::int64_t value() const { return decode_value( bits, wl, interp ); }

  bool operator==( fixed_word const& ) const = default;
};

enum class strictness
{
  strict,
  permissive
};

/*! \brief Block plus the preprocessing and natural ranges of its operands. */
struct ppc_block
{
  block_spec spec;
  preprocess_chain chain_a;
  preprocess_chain chain_b;
  natural_range natural_a;
  natural_range natural_b;
  strictness mode{ strictness::strict };

  static ppc_block make( block_spec const& spec, preprocess_chain chain_a = {}, preprocess_chain chain_b = {},
                         std::optional<natural_range> natural_a = std::nullopt,
                         std::optional<natural_range> natural_b = std::nullopt, strictness mode = strictness::strict )
  {
    ppc_block b{ spec, std::move( chain_a ), std::move( chain_b ),
                 natural_a.value_or( natural_range::full( spec.wl_a, spec.interp_a ) ),
                 natural_b.value_or( natural_range::full( spec.wl_b, spec.interp_b ) ), mode };
    b.validate();
    return b;
  }

  void validate() const
  {
    spec.validate();
    chain_a.validate( spec.wl_a, spec.interp_a );
    chain_b.validate( spec.wl_b, spec.interp_b );
    natural_a.validate( spec.wl_a );
    natural_b.validate( spec.wl_b );
  }

  value_set reach_a() const { return reachable_set( spec.wl_a, spec.interp_a, natural_a, chain_a ); }
  value_set reach_b() const { return reachable_set( spec.wl_b, spec.interp_b, natural_b, chain_b ); }

  truth_table table() const { return truth_table( spec, reach_a(), reach_b() ); }

  fixed_word eval( fixed_word const& a, fixed_word const& b ) const
  {
    if ( a.wl != spec.wl_a || b.wl != spec.wl_b || a.interp != spec.interp_a || b.interp != spec.interp_b )
    {
      throw parameter_error( "operand word lengths or interpretations do not match the block" );
    }
    if ( mode == strictness::strict )
    {
      if ( !natural_a.contains( a.value() ) )
      {
        throw range_error( "operand a = " + std::to_string( a.value() ) + " is outside its natural range [" +
                           std::to_string( natural_a.lo ) + "," + std::to_string( natural_a.hi ) + "]" );
      }
      if ( !natural_b.contains( b.value() ) )
      {
        throw range_error( "operand b = " + std::to_string( b.value() ) + " is outside its natural range [" +
                           std::to_string( natural_b.lo ) + "," + std::to_string( natural_b.hi ) + "]" );
      }
    }
    auto const pa = chain_apply( chain_a, a.bits, spec.interp_a );
    auto const pb = chain_apply( chain_b, b.bits, spec.interp_b );
    return { static_cast<encoding>( spec.evaluate( pa, pb ) ), spec.out_wl(), spec.output_interp() };
  }
};

inline fixed_word ppa_eval( ppc_block const& block, fixed_word const& a, fixed_word const& b )
{
  if ( block.spec.op != block_op::add )
  {
    throw parameter_error( "ppa_eval needs an adder block" );
  }
  return block.eval( a, b );
}

inline fixed_word ppm_eval( ppc_block const& block, fixed_word const& a, fixed_word const& b )
{
  if ( block.spec.op != block_op::mul )
  {
    throw parameter_error( "ppm_eval needs a multiplier block" );
  }
  return block.eval( a, b );
}

/*! signed accumulator width of the MAC; 960 products of 159 x -128 fit with margin */
inline constexpr unsigned mac_accumulator_wl = 26u;
inline constexpr std::size_t mac_max_terms = 960u;

/*! \brief Multiplier of the neuron: 8-bit unsigned pixel times 8-bit two's-complement weight. */
inline block_spec mac_multiplier_spec()
{
  return block_spec::multiplier( 8u, 8u, interpretation::unsigned_int, interpretation::twos_complement );
}

inline fixed_word mac_step( fixed_word const& acc, fixed_word const& pixel, fixed_word const& weight,
                            ppc_block const& block )
{
  if ( acc.wl != mac_accumulator_wl || acc.interp != interpretation::twos_complement )
  {
    throw parameter_error( "accumulator must be a " + std::to_string( mac_accumulator_wl ) + "-bit signed word" );
  }
  auto const sum = acc.value() + ppm_eval( block, pixel, weight ).value();
  if ( sum < min_value( mac_accumulator_wl, interpretation::twos_complement ) ||
       sum > max_value( mac_accumulator_wl, interpretation::twos_complement ) )
  {
    throw arithmetic_error( "MAC accumulator overflow" );
  }
  return fixed_word::s( sum, mac_accumulator_wl );
}

inline fixed_word mac_dotproduct( std::span<fixed_word const> pixels, std::span<fixed_word const> weights,
                                  ppc_block const& block )
{
  if ( pixels.size() != weights.size() )
  {
    throw parameter_error( "pixel and weight sequences differ in length" );
  }
  if ( pixels.size() > mac_max_terms )
  {
    throw parameter_error( "at most " + std::to_string( mac_max_terms ) + " terms per dot product" );
  }
  auto acc = fixed_word::s( 0, mac_accumulator_wl );
  for ( std::size_t i = 0; i < pixels.size(); ++i )
  {
    acc = mac_step( acc, pixels[i], weights[i], block );
  }
  return acc;
}

} // namespace ppc
