/*!
  \file truth_table.hpp
  \brief Arithmetic block descriptions and their don't-care-annotated truth tables

  A truth table row is addressed by the operand pair (a, b) or, equivalently,
  by the minterm index `(a << wl_b) | b`. Rows whose operands fall outside the
  reachable value sets are don't-cares.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sparsity.hpp"

namespace ppc
{

/* dc_count_enumerate and friends walk at most 2^24 rows */
inline constexpr unsigned max_enumeration_inputs = 24u;

enum class block_op
{
  add,
  mul
};

enum class output_policy_kind
{
  full_width,
  truncate_keep_high
};

struct output_policy
{
  output_policy_kind kind{ output_policy_kind::full_width };
  unsigned keep{ 0u };

  static output_policy full_width() { return {}; }
  static output_policy truncate_keep_high( unsigned n ) { return { output_policy_kind::truncate_keep_high, n }; }

  bool operator==( output_policy const& ) const = default;
};

/*! \brief Two-operand adder or multiplier with operand and output word lengths. */
struct block_spec
{
  block_op op{ block_op::add };
  unsigned wl_a{ 0u };
  unsigned wl_b{ 0u };
  interpretation interp_a{ interpretation::unsigned_int };
  interpretation interp_b{ interpretation::unsigned_int };
  output_policy policy{};

  static block_spec adder( unsigned wl_a, unsigned wl_b, interpretation interp = interpretation::unsigned_int )
  {
    block_spec s{ block_op::add, wl_a, wl_b, interp, interp, {} };
    s.validate();
    return s;
  }

  static block_spec multiplier( unsigned wl_a, unsigned wl_b, interpretation interp_a = interpretation::unsigned_int,
                                interpretation interp_b = interpretation::unsigned_int,
                                output_policy policy = output_policy::full_width() )
  {
    block_spec s{ block_op::mul, wl_a, wl_b, interp_a, interp_b, policy };
    s.validate();
    return s;
  }

  bool is_signed() const
  {
    return interp_a == interpretation::twos_complement || interp_b == interpretation::twos_complement;
  }

  interpretation output_interp() const
  {
    return is_signed() ? interpretation::twos_complement : interpretation::unsigned_int;
  }

  unsigned full_width() const { return op == block_op::add ? std::max( wl_a, wl_b ) + 1u : wl_a + wl_b; }

  unsigned out_wl() const
  {
    return policy.kind == output_policy_kind::full_width ? full_width() : policy.keep;
  }

  unsigned num_inputs() const { return wl_a + wl_b; }

  void validate() const
  {
    if ( wl_a == 0u || wl_b == 0u || wl_a > 16u || wl_b > 16u )
    {
      throw parameter_error( "operand word lengths must be in 1..16" );
    }
    if ( op == block_op::add && interp_a != interp_b )
    {
      throw parameter_error( "adder operands must share one interpretation" );
    }
    if ( policy.kind == output_policy_kind::truncate_keep_high && ( policy.keep == 0u || policy.keep > full_width() ) )
    {
      throw parameter_error( "TruncateKeepHigh(" + std::to_string( policy.keep ) + ") exceeds the full width " +
                             std::to_string( full_width() ) );
    }
  }

  /*! \brief Exact numeric result (before output encoding). */
  std::int64_t exact( encoding a, encoding b ) const
  {
    auto const va = decode_value( a, wl_a, interp_a );
    auto const vb = decode_value( b, wl_b, interp_b );
    return op == block_op::add ? va + vb : va * vb;
  }

  /*! \brief Output encoding at out_wl: full-width two's complement, high bits kept when truncating. */
  std::uint64_t evaluate( encoding a, encoding b ) const
  {
    auto const full = encode_value( exact( a, b ), full_width() );
    return full >> ( full_width() - out_wl() );
  }

  /*! \brief Numeric value of the block output. */
  std::int64_t evaluate_value( encoding a, encoding b ) const
  {
    return decode_value( evaluate( a, b ), out_wl(), output_interp() );
  }

  bool operator==( block_spec const& ) const = default;
};

/*! \brief Lazily evaluated truth table of a block restricted to reachable operand sets. */
class truth_table
{
public:
  truth_table( block_spec spec, value_set reach_a, value_set reach_b )
      : spec_( spec ), reach_a_( std::move( reach_a ) ), reach_b_( std::move( reach_b ) )
  {
    spec_.validate();
    if ( reach_a_.wl() != spec_.wl_a || reach_b_.wl() != spec_.wl_b )
    {
      throw parameter_error( "value set word lengths (" + std::to_string( reach_a_.wl() ) + "," +
                             std::to_string( reach_b_.wl() ) + ") do not match the block (" +
                             std::to_string( spec_.wl_a ) + "," + std::to_string( spec_.wl_b ) + ")" );
    }
    mask_a_ = reach_a_.mask();
    mask_b_ = reach_b_.mask();
  }

  block_spec const& spec() const { return spec_; }
  value_set const& reach_a() const { return reach_a_; }
  value_set const& reach_b() const { return reach_b_; }

  unsigned num_inputs() const { return spec_.num_inputs(); }
  unsigned num_outputs() const { return spec_.out_wl(); }
  std::uint64_t num_rows() const { return domain_size( num_inputs() ); }

  std::uint64_t minterm( encoding a, encoding b ) const { return ( std::uint64_t{ a } << spec_.wl_b ) | b; }
  encoding operand_a( std::uint64_t m ) const { return static_cast<encoding>( m >> spec_.wl_b ); }
  encoding operand_b( std::uint64_t m ) const { return static_cast<encoding>( m & wl_mask( spec_.wl_b ) ); }

  bool is_dont_care( encoding a, encoding b ) const { return !mask_a_[a] || !mask_b_[b]; }

  /*! \brief Output encoding of row (a, b), or nullopt for a don't-care row. */
  std::optional<std::uint64_t> row( encoding a, encoding b ) const
  {
    if ( a > wl_mask( spec_.wl_a ) || b > wl_mask( spec_.wl_b ) )
    {
      throw parameter_error( "operand outside the block domain" );
    }
    if ( is_dont_care( a, b ) )
    {
      return std::nullopt;
    }
    return spec_.evaluate( a, b );
  }

  std::optional<std::uint64_t> row( std::uint64_t m ) const { return row( operand_a( m ), operand_b( m ) ); }

  /*! \brief Number of specified rows, |reach_a| * |reach_b|. */
  std::uint64_t specified_rows() const { return reach_a_.size() * reach_b_.size(); }

private:
  block_spec spec_;
  value_set reach_a_;
  value_set reach_b_;
  std::vector<bool> mask_a_;
  std::vector<bool> mask_b_;
};

inline truth_table gen_block_tt( block_spec const& spec, value_set reach_a, value_set reach_b )
{
  return truth_table( spec, std::move( reach_a ), std::move( reach_b ) );
}

/*! \brief Precise table: every row specified. */
inline truth_table precise_tt( block_spec const& spec )
{
  return truth_table( spec, value_set::full( spec.wl_a ), value_set::full( spec.wl_b ) );
}

/*! \brief Counts don't-care rows by walking every row. */
inline std::uint64_t dc_count_enumerate( truth_table const& tt )
{
  if ( tt.num_inputs() > max_enumeration_inputs )
  {
    throw capacity_error( "DC enumeration is limited to " + std::to_string( max_enumeration_inputs ) + " input bits" );
  }
  std::uint64_t count = 0u;
  for ( std::uint64_t m = 0u; m < tt.num_rows(); ++m )
  {
    count += tt.is_dont_care( tt.operand_a( m ), tt.operand_b( m ) ) ? 1u : 0u;
  }
  return count;
}

/*! \brief 2^(wl_a+wl_b) * (1 - 1/(x*x')), exact. */
inline std::uint64_t dc_formula_ds( unsigned wl_a, unsigned wl_b, std::uint32_t x, std::uint32_t x2 )
{
  if ( !std::has_single_bit( x ) || !std::has_single_bit( x2 ) )
  {
    throw parameter_error( "DS steps must be powers of two" );
  }
  if ( x > domain_size( wl_a ) || x2 > domain_size( wl_b ) )
  {
    throw parameter_error( "DS step exceeds the operand domain" );
  }
  auto const rows = domain_size( wl_a + wl_b );
  return rows - rows / ( std::uint64_t{ x } * x2 );
}

/*! \brief Thresholding DC count as printed in the literature: 2^(2wl) * (x/2^wl) * (x'/2^wl) = x*x'.
 *
 * This value disagrees with enumeration under the definition of TH used by
 * `th_apply`; it is reported next to `dc_count_enumerate`, which is normative.
 */
struct th_dc_report
{
  std::uint64_t published;
  std::uint64_t enumerated;
  bool agree() const { return published == enumerated; }
};

inline std::uint64_t dc_formula_th( unsigned wl, std::uint32_t x, std::uint32_t x2 )
{
  if ( x > domain_size( wl ) || x2 > domain_size( wl ) )
  {
    throw parameter_error( "threshold exceeds the operand domain" );
  }
  return std::uint64_t{ x } * x2;
}

/*! \brief Printed TH formula beside enumeration for a wl x wl block with TH_x^y, TH_x'^y' on the inputs. */
inline th_dc_report dc_report_th( block_spec const& spec, std::uint32_t x, std::uint32_t y, std::uint32_t x2, std::uint32_t y2 )
{
  if ( spec.wl_a != spec.wl_b )
  {
    throw parameter_error( "the thresholding DC formula assumes equal operand word lengths" );
  }
  auto const ra = reachable_set( spec.wl_a, interpretation::unsigned_int, natural_range::full( spec.wl_a ),
                                 preprocess_chain{ preprocessing::threshold( x, y ) } );
  auto const rb = reachable_set( spec.wl_b, interpretation::unsigned_int, natural_range::full( spec.wl_b ),
                                 preprocess_chain{ preprocessing::threshold( x2, y2 ) } );
  return { dc_formula_th( spec.wl_a, x, x2 ), dc_count_enumerate( truth_table( spec, ra, rb ) ) };
}

/*! \brief Karnaugh-map ordering of `bits`-bit labels: the two low bits cycle
 *         00,01,11,10 while the remaining high bits count in binary
 *         (3 bits: 000,001,011,010,100,101,111,110). */
inline std::vector<encoding> km_order( unsigned bits )
{
  std::vector<encoding> order;
  if ( bits == 1u )
  {
    return { 0u, 1u };
  }
  static constexpr encoding gray2[4] = { 0u, 1u, 3u, 2u };
  for ( encoding hi = 0u; hi < ( 1u << ( bits - 2u ) ); ++hi )
  {
    for ( auto lo : gray2 )
    {
      order.push_back( ( hi << 2u ) | lo );
    }
  }
  return order;
}

inline std::string to_binary( std::uint64_t v, unsigned bits )
{
  std::string s( bits, '0' );
  for ( unsigned i = 0; i < bits; ++i )
  {
    s[bits - 1u - i] = ( ( v >> i ) & 1u ) ? '1' : '0';
  }
  return s;
}

/*! \brief Karnaugh-map cells of one output bit: rows = operand a, columns = operand b,
 *         both in `km_order`; each cell is '0', '1' or 'd'. */
inline std::vector<std::string> km_cells( truth_table const& tt, unsigned output_bit )
{
  auto const& spec = tt.spec();
  if ( spec.wl_a > 4u || spec.wl_b > 4u )
  {
    throw capacity_error( "Karnaugh maps are rendered for operands of at most 4 bits" );
  }
  if ( output_bit >= tt.num_outputs() )
  {
    throw parameter_error( "output bit " + std::to_string( output_bit ) + " does not exist" );
  }
  std::vector<std::string> grid;
  for ( auto a : km_order( spec.wl_a ) )
  {
    std::string line;
    for ( auto b : km_order( spec.wl_b ) )
    {
      auto const r = tt.row( a, b );
      line += !r ? 'd' : ( ( ( *r >> output_bit ) & 1u ) ? '1' : '0' );
    }
    grid.push_back( std::move( line ) );
  }
  return grid;
}

/*! \brief Text rendering of `km_cells` with binary row and column labels. */
inline std::string km_render( truth_table const& tt, unsigned output_bit )
{
  auto const cells = km_cells( tt, output_bit );
  auto const& spec = tt.spec();
  auto const rows = km_order( spec.wl_a );
  auto const cols = km_order( spec.wl_b );
  auto const corner = std::string( "a\\b" );
  auto const label_w = std::max<std::size_t>( corner.size(), spec.wl_a );

  std::string out = corner + std::string( label_w - corner.size(), ' ' );
  for ( auto b : cols )
  {
    out += ' ' + to_binary( b, spec.wl_b );
  }
  out += '\n';
  for ( std::size_t r = 0; r < rows.size(); ++r )
  {
    auto const label = to_binary( rows[r], spec.wl_a );
    out += label + std::string( label_w - label.size(), ' ' );
    for ( std::size_t c = 0; c < cols.size(); ++c )
    {
      out += ' ';
      out += cells[r][c];
      out += std::string( spec.wl_b - 1u, ' ' );
    }
    out += '\n';
  }
  return out;
}

/*! \brief One sub-block of a segmented adder or multiplier. */
struct segment
{
  block_spec spec;
  unsigned field_a{ 0u };       ///< index of the operand-a field (0 = least significant)
  unsigned field_b{ 0u };       ///< index of the operand-b field
  unsigned result_shift{ 0u };  ///< weight of the sub-result in the full result
};

/*! \brief Splits a block into `segment_wl`-bit sub-blocks.
 *
 * Multipliers become (wl_a/seg) x (wl_b/seg) partial-product multipliers;
 * adders become max(wl_a, wl_b)/seg cascaded seg-bit adders (the narrower
 * operand is zero-extended). Sub-blocks are full width; recombination
 * (partial-product adders, carry chain) is not part of any sub-block.
 */
inline std::vector<segment> segment_layout( block_spec const& spec, unsigned segment_wl )
{
  spec.validate();
  if ( segment_wl == 0u )
  {
    throw parameter_error( "segment width must be positive" );
  }
  if ( spec.is_signed() )
  {
    throw parameter_error( "segmentation is only supported for unsigned blocks" );
  }
  std::vector<segment> out;
  if ( spec.op == block_op::mul )
  {
    if ( spec.wl_a % segment_wl != 0u || spec.wl_b % segment_wl != 0u )
    {
      throw parameter_error( "operand word lengths are not divisible by the segment width " + std::to_string( segment_wl ) );
    }
    for ( unsigned i = 0; i < spec.wl_a / segment_wl; ++i )
    {
      for ( unsigned j = 0; j < spec.wl_b / segment_wl; ++j )
      {
        out.push_back( { block_spec::multiplier( segment_wl, segment_wl ), i, j, ( i + j ) * segment_wl } );
      }
    }
  }
  else
  {
    auto const width = std::max( spec.wl_a, spec.wl_b );
    if ( width % segment_wl != 0u )
    {
      throw parameter_error( "adder word length " + std::to_string( width ) + " is not divisible by the segment width " +
                             std::to_string( segment_wl ) );
    }
    for ( unsigned i = 0; i < width / segment_wl; ++i )
    {
      out.push_back( { block_spec::adder( segment_wl, segment_wl ), i, i, i * segment_wl } );
    }
  }
  return out;
}

inline std::vector<block_spec> segmented_blocks( block_spec const& spec, unsigned segment_wl )
{
  std::vector<block_spec> out;
  for ( auto const& s : segment_layout( spec, segment_wl ) )
  {
    out.push_back( s.spec );
  }
  return out;
}

/*! \brief Projection of an operand value set onto one segment field (zero beyond the operand width). */
inline value_set segment_field( value_set const& reach, unsigned field, unsigned segment_wl )
{
  auto const shift = field * segment_wl;
  if ( shift >= reach.wl() )
  {
    return value_set::from_values( segment_wl, { 0u } );
  }
  return reach.project( shift, segment_wl );
}

} // namespace ppc
