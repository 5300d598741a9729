package StoryDSL;

import java.util.Arrays;
import java.util.Vector;

public class NodeTransition {
    public NodeTransition(Node src, Node dst, Vector<String> evts) {
        srcNode = src;
        dstNode = dst;
        nodeTransEvents = evts;
    }
    
    public Node GetSrcNode() {
        return srcNode;
    }
    
    public Node GetDstNode() {
        return dstNode;
    }
    
    public Vector<String> GetNodeTransEvents() {
        return nodeTransEvents;
    }
    
    private Node srcNode;
    private Node dstNode;
    private Vector<String> nodeTransEvents;
}
