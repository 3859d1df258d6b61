"""Shared RTL source snippets used by several test modules.

BEHAVIOR_CASES is a list of hand-traced micro-modules, one per branch of
the behavioral classifier, each paired with its expected classification
sets. Keeping them in one place lets the unit tests and the acceptance
gate consume identical fixtures.
"""

# Two modules where the top (top_b) instantiates the child (child_a).
AB_SOURCE = """
module child_a (
    input  [7:0] din,
    output [7:0] dout
);
  assign dout = din;
endmodule

module top_b (
    input  [7:0] top_in,
    output [7:0] top_out
);
  child_a u0 (
      .din (top_in),
      .dout(top_out)
  );
endmodule
"""

# Child net candidate that reaches a top port only through a child port
# and one instantiation hop (refinement Case 3 then Case 2).
NET_EXPANSION_SOURCE = """
module leaf (
    input  [7:0] din,
    output [7:0] dout
);
  wire [7:0] key_mix;
  assign key_mix = din ^ 8'h5A;
  assign dout = key_mix;
endmodule

module wrap (
    input  [7:0] secret_in,
    output [7:0] secret_out
);
  leaf u0 (
      .din (secret_in),
      .dout(secret_out)
  );
endmodule
"""

# A net buried in a child with no connection to any port: refinement must
# drop it as a likely secondary asset.
SECONDARY_NET_SOURCE = """
module deep (
    input clk,
    output reg q
);
  reg key_buf;
  always @(posedge clk) begin
    key_buf <= key_buf ^ 1'b1;
  end
  always @(posedge clk) begin
    q <= 1'b0;
  end
endmodule

module roof (
    input  clk,
    output q_out
);
  deep u0 (
      .clk(clk),
      .q  (q_out)
  );
endmodule
"""

# Status signal of one module guarded by another module's conditional.
STATUS_LINK_SOURCE = """
module worker (
    input      clk,
    input      go,
    output reg done
);
  always @(posedge clk) begin
    done <= go;
  end
endmodule

module boss (
    input      clk,
    input      go_in,
    output reg busy
);
  wire done_w;

  worker u0 (
      .clk (clk),
      .go  (go_in),
      .done(done_w)
  );

  always @(posedge clk) begin
    if (done_w) begin
      busy <= 1'b0;
    end else begin
      busy <= 1'b1;
    end
  end
endmodule
"""

# (name, source, expected sets) triples; every expected key lists the
# exact membership of that classification bucket.
BEHAVIOR_CASES = [
    (
        "control_input_if",
        """
        module m (input clk, input go, output reg q);
          always @(posedge clk) begin
            if (go) q <= 1'b1;
          end
        endmodule
        """,
        {"control": ["go"], "configuration": [], "status": ["q"], "data": []},
    ),
    (
        "control_net_if",
        """
        module m (input clk, output reg q);
          reg flag;
          always @(posedge clk) begin
            if (flag) q <= 1'b1;
          end
        endmodule
        """,
        {"control": ["flag"], "configuration": [], "status": ["q"], "data": []},
    ),
    (
        "config_case",
        """
        module m (input [1:0] sel, output reg q);
          always @(*) begin
            case (sel)
              2'b00: q = 1'b0;
              default: q = 1'b1;
            endcase
          end
        endmodule
        """,
        {"control": [], "configuration": ["sel"], "status": ["q"], "data": []},
    ),
    (
        "config_if_multi_statement",
        """
        module m (input clk, input [2:0] mode, output reg a, output reg b);
          always @(posedge clk) begin
            if (mode != 3'd0) begin
              a <= 1'b1;
              b <= 1'b0;
            end
          end
        endmodule
        """,
        {"control": [], "configuration": ["mode"],
         "status": ["a", "b"], "data": []},
    ),
    (
        "config_if_single_statement_negative",
        """
        module m (input clk, input [2:0] mode, output reg a);
          always @(posedge clk) begin
            if (mode != 3'd0) a <= 1'b1;
          end
        endmodule
        """,
        {"control": [], "configuration": [], "status": ["a"], "data": []},
    ),
    (
        "status_output_assign",
        """
        module m (input a, output y);
          assign y = a;
        endmodule
        """,
        {"control": [], "configuration": [], "status": ["y"], "data": []},
    ),
    (
        "data_output_lhs",
        """
        module m (input clk, output reg [7:0] q);
          always @(posedge clk) begin
            q <= q + 8'd1;
          end
        endmodule
        """,
        {"control": [], "configuration": [], "status": [], "data": ["q"]},
    ),
    (
        "data_input_rhs",
        """
        module m (input clk, input [15:0] din);
          reg [15:0] hold;
          always @(posedge clk) begin
            hold <= din;
          end
        endmodule
        """,
        {"control": [], "configuration": [], "status": [], "data": ["din"]},
    ),
    (
        # a ternary statement is a conditional, not an assignment, so only
        # the condition identifiers classify; y picks up no Status here
        "ternary_control",
        """
        module m (input pick, input a, input b, output y);
          assign y = pick ? a : b;
        endmodule
        """,
        {"control": ["pick"], "configuration": [], "status": [], "data": []},
    ),
    (
        "inout_both_directions",
        """
        module m (inout [7:0] pad, inout flag, output reg [7:0] snap);
          always @(posedge flag) begin
            snap <= pad;
          end
          assign flag = snap[0];
        endmodule
        """,
        {"control": [], "configuration": [],
         "status": ["flag"], "data": ["pad", "snap"]},
    ),
]
