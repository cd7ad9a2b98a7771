package app.ui;

import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JButton;

public class ToolbarController implements ActionListener {
    private JButton open;
    private JButton save;
    private JButton close;

    public void actionPerformed(ActionEvent e) {
        if (e.getSource() == open) {
            document.open();
        } else if (e.getSource() == save) {
            document.save();
        } else if (e.getSource() == close) {
            document.close();
        }
    }
}
